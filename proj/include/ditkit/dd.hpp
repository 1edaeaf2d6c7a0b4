// Copyright 2026 The ditkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DITKIT_DD_HPP
#define DITKIT_DD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ditkit/core.hpp"
#include "ditkit/statevector.hpp"

namespace ditkit::dd {

class Package;
struct PackageImpl;

struct VNode;

struct VEdge {
    Complex weight{0.0};
    VNode* node = nullptr;

    bool is_zero() const { return weight == Complex(0.0); }
};

/// An edge-weighted decision diagram over one qudit per level (root level 0 =
/// first-declared qudit). Each node has exactly d_level successor edges.
/// Canonical form: the first nonzero successor weight of every node is real
/// positive and the successor weight vector has unit max-norm, so equal
/// states produce identical diagrams (weights compared within 1e-12).
///
/// A State shares ownership of its Package; a package is confined to a
/// single worker at a time, but independent packages may run in parallel.
class State {
  public:
    State() = default;

    const std::vector<std::size_t>& dims() const;
    const VEdge& root() const { return *root_; }
    Package& package() const { return *package_; }

  private:
    friend class Package;
    State(std::shared_ptr<Package> package, std::shared_ptr<VEdge> root)
        : package_(std::move(package)), root_(std::move(root)) {}

    std::shared_ptr<Package> package_;
    std::shared_ptr<VEdge> root_; // registered as a GC root while alive
};

/// Node manager: unique table, operation caches, and a deferred mark-sweep
/// collector that runs when the pool exceeds `gc_threshold` nodes.
class Package : public std::enable_shared_from_this<Package> {
  public:
    static std::shared_ptr<Package> create(std::vector<std::size_t> dims,
                                           std::size_t gc_threshold = 1000000);
    ~Package();

    const std::vector<std::size_t>& dims() const { return dims_; }

    State zero_state();
    State from_vector(const sim::StateVector& state);
    State apply_gate(const State& state, const GateSpec& gate);

    std::vector<Complex> to_vector(const State& state) const;
    std::size_t node_count(const State& state) const;

    /// Top-down inverse-CDF draw; equivalent to sim::draw_outcome on the
    /// decoded vector. Returns per-line digits.
    std::vector<std::size_t> draw(const State& state, double u) const;

    /// Node/edge adjacency listing for debugging; format not stable.
    std::string dump(const State& state) const;

    std::size_t live_node_estimate() const { return pool_.size(); }
    std::size_t gc_runs() const { return gc_runs_; }

  private:
    explicit Package(std::vector<std::size_t> dims, std::size_t gc_threshold);

    VEdge make_node(std::size_t level, std::vector<VEdge> succ);
    VEdge build_from_span(std::size_t level, const Complex* amps, std::size_t len);
    VEdge add(const VEdge& a, const VEdge& b);
    double subtree_norm(VNode* node) const;
    void collect_if_needed();
    void clear_operation_state();
    State register_root(VEdge edge);

    std::vector<std::size_t> dims_;
    std::size_t gc_threshold_;
    std::size_t gc_runs_ = 0;
    std::vector<std::unique_ptr<VNode>> pool_;
    std::unique_ptr<VNode> terminal_;
    std::unique_ptr<PackageImpl> impl_;

    friend struct PackageOps;
};

// Free-function surface mirroring the dense backend.

/// Builds a canonical diagram from a normalized dense vector (fresh package).
State from_vector(const sim::StateVector& state);

State apply_gate(const State& state, const GateSpec& gate);

/// Count of unique nonterminal nodes.
std::size_t node_count(const State& state);

sim::StateVector to_vector(const State& state);

sim::Counts sample(const State& state, std::uint64_t shots, std::uint64_t seed);

/// Full-circuit run on a fresh package; initial_state honored when present.
State simulate(const Circuit& circuit, std::size_t gc_threshold = 1000000);

} // namespace ditkit::dd

#endif
