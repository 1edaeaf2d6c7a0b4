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

#include "ditkit/dd.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ditkit/gates.hpp"

namespace ditkit::dd {

namespace {

constexpr double kWeightTol = 1e-12; // componentwise unique-table tolerance
constexpr double kZeroTol = 1e-14;

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t bits_of(double x) {
    if (x == 0.0) {
        x = 0.0; // normalize -0.0
    }
    return std::bit_cast<std::uint64_t>(x);
}

/// Interns doubles so that values within kWeightTol share one canonical
/// representative; makes weight comparison and hashing exact.
class WeightTable {
  public:
    double intern(double x) {
        if (std::abs(x) < kZeroTol) {
            return 0.0;
        }
        if (std::abs(x) > 1e6) {
            return x;
        }
        const auto key = static_cast<long long>(std::llround(x * 1e10));
        for (long long k = key - 1; k <= key + 1; ++k) {
            const auto it = buckets_.find(k);
            if (it == buckets_.end()) {
                continue;
            }
            for (const double v : it->second) {
                if (std::abs(v - x) <= kWeightTol) {
                    return v;
                }
            }
        }
        buckets_[key].push_back(x);
        return x;
    }

    Complex intern(const Complex& z) {
        return {intern(z.real()), intern(z.imag())};
    }

  private:
    std::unordered_map<long long, std::vector<double>> buckets_;
};

} // namespace

struct VNode {
    std::uint32_t level = 0;
    bool mark = false;
    std::vector<VEdge> succ; // empty for the terminal
};

/// Access shim for the in-file machinery (GateApplier) that needs the
/// package's private node constructors.
struct PackageOps {
    static VEdge add(Package& p, const VEdge& a, const VEdge& b) {
        return p.add(a, b);
    }
    static VEdge make_node(Package& p, std::size_t level, std::vector<VEdge> succ) {
        return p.make_node(level, std::move(succ));
    }
};

namespace {

struct MNode;

struct MEdge {
    Complex weight{0.0};
    MNode* node = nullptr;

    bool is_zero() const { return weight == Complex(0.0); }
};

struct MNode {
    std::uint32_t level = 0;
    std::vector<MEdge> succ; // d*d entries, row-major; empty for terminal
};

struct PairHash {
    std::size_t operator()(const std::pair<const void*, const void*>& p) const {
        return std::hash<const void*>()(p.first) * 31 ^
               std::hash<const void*>()(p.second);
    }
};

struct AddKey {
    const VNode* a;
    const VNode* b;
    std::uint64_t wa_re, wa_im, wb_re, wb_im;

    bool operator==(const AddKey&) const = default;
};

struct AddKeyHash {
    std::size_t operator()(const AddKey& k) const {
        std::uint64_t h = std::hash<const void*>()(k.a);
        h = hash_mix(h, std::hash<const void*>()(k.b));
        h = hash_mix(h, k.wa_re);
        h = hash_mix(h, k.wa_im);
        h = hash_mix(h, k.wb_re);
        h = hash_mix(h, k.wb_im);
        return h;
    }
};

/// Context while building the embedded matrix diagram of one gate:
/// row/col digits of the operand lines passed so far plus whether all
/// controls seen so far matched their level.
struct BuildCtx {
    std::array<std::uint8_t, 2> row{0, 0};
    std::array<std::uint8_t, 2> col{0, 0};
    std::uint8_t assigned = 0;
    bool armed = true;

    std::uint32_t code() const {
        return static_cast<std::uint32_t>(row[0]) | (static_cast<std::uint32_t>(col[0]) << 8) |
               (static_cast<std::uint32_t>(row[1]) << 16) |
               (static_cast<std::uint32_t>(col[1]) << 24);
    }
};

} // namespace

struct PackageImpl {
    WeightTable weights;

    // unique table: hash -> candidate nodes
    std::unordered_map<std::uint64_t, std::vector<VNode*>> unique;

    std::unordered_map<AddKey, VEdge, AddKeyHash> add_cache;
    std::unordered_map<std::pair<const void*, const void*>, VEdge, PairHash>
        mult_cache;

    std::vector<std::unique_ptr<MNode>> mpool;
    std::unique_ptr<MNode> mterminal = std::make_unique<MNode>();

    mutable std::unordered_map<const VNode*, double> norms;

    std::unordered_set<VEdge*> roots;
};

Package::Package(std::vector<std::size_t> dims, std::size_t gc_threshold)
    : dims_(std::move(dims)), gc_threshold_(gc_threshold),
      terminal_(std::make_unique<VNode>()), impl_(std::make_unique<PackageImpl>()) {
    for (const std::size_t d : dims_) {
        if (d < 2) {
            throw std::invalid_argument("qudit dimension must be >= 2");
        }
    }
    terminal_->level = static_cast<std::uint32_t>(dims_.size());
    impl_->mterminal->level = terminal_->level;
}

std::shared_ptr<Package> Package::create(std::vector<std::size_t> dims,
                                         std::size_t gc_threshold) {
    return std::shared_ptr<Package>(new Package(std::move(dims), gc_threshold));
}

Package::~Package() = default;

const std::vector<std::size_t>& State::dims() const {
    return package_->dims();
}

VEdge Package::make_node(std::size_t level, std::vector<VEdge> succ) {
    if (succ.size() != dims_[level]) {
        throw std::invalid_argument("successor arity mismatch");
    }
    // Zero out negligible weights and detach their children.
    bool all_zero = true;
    for (VEdge& e : succ) {
        if (std::abs(e.weight) < kZeroTol) {
            e.weight = 0.0;
            e.node = terminal_.get();
        } else {
            all_zero = false;
        }
    }
    if (all_zero) {
        return {Complex(0.0), terminal_.get()};
    }

    // Normalization: unit max-norm, first nonzero weight real positive.
    double max_mag = 0.0;
    const VEdge* first = nullptr;
    for (const VEdge& e : succ) {
        max_mag = std::max(max_mag, std::abs(e.weight));
        if (first == nullptr && !e.is_zero()) {
            first = &e;
        }
    }
    const Complex factor = max_mag * (first->weight / std::abs(first->weight));
    for (VEdge& e : succ) {
        if (!e.is_zero()) {
            e.weight = impl_->weights.intern(e.weight / factor);
            if (e.weight == Complex(0.0)) {
                e.node = terminal_.get();
            }
        }
    }

    std::uint64_t h = level;
    for (const VEdge& e : succ) {
        h = hash_mix(h, std::hash<const void*>()(e.node));
        h = hash_mix(h, bits_of(e.weight.real()));
        h = hash_mix(h, bits_of(e.weight.imag()));
    }
    auto& bucket = impl_->unique[h];
    for (VNode* candidate : bucket) {
        if (candidate->level == level && candidate->succ.size() == succ.size()) {
            bool same = true;
            for (std::size_t i = 0; i < succ.size(); ++i) {
                if (candidate->succ[i].node != succ[i].node ||
                    candidate->succ[i].weight != succ[i].weight) {
                    same = false;
                    break;
                }
            }
            if (same) {
                return {factor, candidate};
            }
        }
    }
    auto node = std::make_unique<VNode>();
    node->level = static_cast<std::uint32_t>(level);
    node->succ = std::move(succ);
    VNode* raw = node.get();
    pool_.push_back(std::move(node));
    bucket.push_back(raw);
    return {factor, raw};
}

State Package::register_root(VEdge edge) {
    auto root = std::shared_ptr<VEdge>(new VEdge(edge), [this](VEdge* e) {
        impl_->roots.erase(e);
        delete e;
    });
    impl_->roots.insert(root.get());
    return State(shared_from_this(), std::move(root));
}

State Package::zero_state() {
    VEdge edge{Complex(1.0), terminal_.get()};
    for (std::size_t level = dims_.size(); level-- > 0;) {
        std::vector<VEdge> succ(dims_[level]);
        succ[0] = edge;
        for (std::size_t a = 1; a < dims_[level]; ++a) {
            succ[a] = {Complex(0.0), terminal_.get()};
        }
        edge = make_node(level, std::move(succ));
    }
    return register_root(edge);
}

VEdge Package::build_from_span(std::size_t level, const Complex* amps,
                               std::size_t len) {
    if (level == dims_.size()) {
        return {amps[0], terminal_.get()};
    }
    const std::size_t d = dims_[level];
    const std::size_t block = len / d;
    std::vector<VEdge> succ(d);
    for (std::size_t a = 0; a < d; ++a) {
        succ[a] = build_from_span(level + 1, amps + a * block, block);
    }
    return make_node(level, std::move(succ));
}

State Package::from_vector(const sim::StateVector& state) {
    if (state.dims != dims_) {
        throw std::invalid_argument("state dimensions do not match this package");
    }
    if (std::abs(state.norm_squared() - 1.0) > 1e-6) {
        throw std::invalid_argument("dd::from_vector: state is not normalized");
    }
    collect_if_needed();
    return register_root(build_from_span(0, state.amps.data(), state.amps.size()));
}

VEdge Package::add(const VEdge& a, const VEdge& b) {
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    if (a.node == b.node) {
        const Complex w = a.weight + b.weight;
        if (std::abs(w) < kZeroTol) {
            return {Complex(0.0), terminal_.get()};
        }
        return {w, a.node};
    }
    const AddKey key{a.node, b.node, bits_of(a.weight.real()),
                     bits_of(a.weight.imag()), bits_of(b.weight.real()),
                     bits_of(b.weight.imag())};
    const auto hit = impl_->add_cache.find(key);
    if (hit != impl_->add_cache.end()) {
        return hit->second;
    }
    const std::size_t level = a.node->level;
    const std::size_t d = dims_[level];
    std::vector<VEdge> succ(d);
    for (std::size_t i = 0; i < d; ++i) {
        const VEdge ea{a.weight * a.node->succ[i].weight, a.node->succ[i].node};
        const VEdge eb{b.weight * b.node->succ[i].weight, b.node->succ[i].node};
        succ[i] = add(ea, eb);
    }
    const VEdge result = make_node(level, std::move(succ));
    impl_->add_cache.emplace(key, result);
    return result;
}

namespace {

/// Builds and multiplies the embedded matrix diagram of a single gate.
class GateApplier {
  public:
    GateApplier(Package& pkg, PackageImpl& impl,
                const std::vector<std::size_t>& dims, const GateSpec& gate,
                VNode* vterminal)
        : pkg_(pkg), impl_(impl), dims_(dims), vterminal_(vterminal) {
        op_dims_ = operand_dims(gate, dims);
        matrix_ = gate_matrix(gate, op_dims_);

        for (std::size_t i = 0; i < gate.lines.size(); ++i) {
            relevant_.push_back({gate.lines[i], static_cast<int>(i), 0});
        }
        if (gate.control) {
            for (const auto& [line, level] : gate.control->controls) {
                relevant_.push_back({line, -1, level});
            }
        }
        std::sort(relevant_.begin(), relevant_.end(),
                  [](const Line& a, const Line& b) { return a.line < b.line; });
        last_relevant_ = relevant_.back().line;
    }

    VEdge apply(const VEdge& state) {
        const MEdge gate_dd = build(0, BuildCtx{});
        return multiply(gate_dd, state);
    }

  private:
    struct Line {
        std::size_t line;
        int operand_slot; // -1 for a control line
        std::size_t control_level;
    };

    const Line* relevant_at(std::size_t level) const {
        for (const Line& l : relevant_) {
            if (l.line == level) {
                return &l;
            }
        }
        return nullptr;
    }

    Complex coefficient(const BuildCtx& ctx) const {
        std::size_t row = 0;
        std::size_t col = 0;
        bool diagonal = true;
        for (std::size_t slot = 0; slot < op_dims_.size(); ++slot) {
            row = row * op_dims_[slot] + ctx.row[slot];
            col = col * op_dims_[slot] + ctx.col[slot];
            diagonal &= ctx.row[slot] == ctx.col[slot];
        }
        if (!ctx.armed) {
            return diagonal ? Complex(1.0) : Complex(0.0);
        }
        return matrix_(row, col);
    }

    MEdge make_mnode(std::size_t level, std::vector<MEdge> succ) {
        bool all_zero = true;
        for (MEdge& e : succ) {
            if (std::abs(e.weight) < kZeroTol) {
                e.weight = 0.0;
                e.node = impl_.mterminal.get();
            } else {
                all_zero = false;
            }
        }
        if (all_zero) {
            return {Complex(0.0), impl_.mterminal.get()};
        }
        double max_mag = 0.0;
        const MEdge* first = nullptr;
        for (const MEdge& e : succ) {
            max_mag = std::max(max_mag, std::abs(e.weight));
            if (first == nullptr && !e.is_zero()) {
                first = &e;
            }
        }
        const Complex factor = max_mag * (first->weight / std::abs(first->weight));
        for (MEdge& e : succ) {
            if (!e.is_zero()) {
                e.weight = impl_.weights.intern(e.weight / factor);
            }
        }
        auto node = std::make_unique<MNode>();
        node->level = static_cast<std::uint32_t>(level);
        node->succ = std::move(succ);
        MNode* raw = node.get();
        impl_.mpool.push_back(std::move(node));
        return {factor, raw};
    }

    MEdge identity_suffix(std::size_t level) {
        if (level == dims_.size()) {
            return {Complex(1.0), impl_.mterminal.get()};
        }
        const auto hit = identity_memo_.find(level);
        if (hit != identity_memo_.end()) {
            return hit->second;
        }
        const std::size_t d = dims_[level];
        std::vector<MEdge> succ(d * d);
        const MEdge below = identity_suffix(level + 1);
        for (std::size_t a = 0; a < d; ++a) {
            succ[a * d + a] = below;
        }
        const MEdge result = make_mnode(level, std::move(succ));
        identity_memo_.emplace(level, result);
        return result;
    }

    MEdge build(std::size_t level, BuildCtx ctx) {
        if (level > last_relevant_) {
            const Complex c = coefficient(ctx);
            if (std::abs(c) < kZeroTol) {
                return {Complex(0.0), impl_.mterminal.get()};
            }
            MEdge suffix = identity_suffix(level);
            return {c * suffix.weight, suffix.node};
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(level) << 40) |
            (static_cast<std::uint64_t>(ctx.armed) << 36) |
            (static_cast<std::uint64_t>(ctx.assigned) << 32) | ctx.code();
        const auto hit = build_memo_.find(key);
        if (hit != build_memo_.end()) {
            return hit->second;
        }

        const std::size_t d = dims_[level];
        std::vector<MEdge> succ(d * d);
        const Line* line = relevant_at(level);
        if (line == nullptr) {
            const MEdge below = build(level + 1, ctx);
            for (std::size_t a = 0; a < d; ++a) {
                succ[a * d + a] = below;
            }
        } else if (line->operand_slot < 0) {
            for (std::size_t a = 0; a < d; ++a) {
                BuildCtx next = ctx;
                next.armed = ctx.armed && a == line->control_level;
                succ[a * d + a] = build(level + 1, next);
            }
        } else {
            const auto slot = static_cast<std::size_t>(line->operand_slot);
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t b = 0; b < d; ++b) {
                    BuildCtx next = ctx;
                    next.row[slot] = static_cast<std::uint8_t>(a);
                    next.col[slot] = static_cast<std::uint8_t>(b);
                    ++next.assigned;
                    succ[a * d + b] = build(level + 1, next);
                }
            }
        }
        const MEdge result = make_mnode(level, std::move(succ));
        build_memo_.emplace(key, result);
        return result;
    }

    VEdge multiply(const MEdge& m, const VEdge& v) {
        if (m.is_zero() || v.is_zero()) {
            return {Complex(0.0), vterminal_};
        }
        if (m.node == impl_.mterminal.get()) {
            return {m.weight * v.weight, v.node};
        }
        const std::pair<const void*, const void*> key{m.node, v.node};
        const auto hit = impl_.mult_cache.find(key);
        if (hit != impl_.mult_cache.end()) {
            VEdge r = hit->second;
            r.weight *= m.weight * v.weight;
            if (std::abs(r.weight) < kZeroTol) {
                return {Complex(0.0), vterminal_};
            }
            return r;
        }
        const std::size_t level = m.node->level;
        const std::size_t d = dims_[level];
        std::vector<VEdge> succ(d);
        for (std::size_t a = 0; a < d; ++a) {
            VEdge acc{Complex(0.0), vterminal_};
            for (std::size_t b = 0; b < d; ++b) {
                const MEdge& mab = m.node->succ[a * d + b];
                const VEdge& vb = v.node->succ[b];
                if (mab.is_zero() || vb.is_zero()) {
                    continue;
                }
                acc = PackageOps::add(pkg_, acc, multiply(mab, vb));
            }
            succ[a] = acc;
        }
        VEdge result = PackageOps::make_node(pkg_, level, std::move(succ));
        impl_.mult_cache.emplace(key, result);
        result.weight *= m.weight * v.weight;
        if (std::abs(result.weight) < kZeroTol) {
            return {Complex(0.0), vterminal_};
        }
        return result;
    }

    Package& pkg_;
    PackageImpl& impl_;
    const std::vector<std::size_t>& dims_;
    VNode* vterminal_;
    std::vector<std::size_t> op_dims_;
    Matrix matrix_;
    std::vector<Line> relevant_;
    std::size_t last_relevant_ = 0;
    std::unordered_map<std::uint64_t, MEdge> build_memo_;
    std::unordered_map<std::size_t, MEdge> identity_memo_;
};

} // namespace

void Package::clear_operation_state() {
    impl_->add_cache.clear();
    impl_->mult_cache.clear();
    impl_->mpool.clear();
}

void Package::collect_if_needed() {
    if (pool_.size() <= gc_threshold_) {
        return;
    }
    ++gc_runs_;
    clear_operation_state();
    impl_->norms.clear();

    for (const auto& node : pool_) {
        node->mark = false;
    }
    std::vector<VNode*> stack;
    for (const VEdge* root : impl_->roots) {
        if (root->node != nullptr && root->node != terminal_.get()) {
            stack.push_back(root->node);
        }
    }
    while (!stack.empty()) {
        VNode* node = stack.back();
        stack.pop_back();
        if (node->mark) {
            continue;
        }
        node->mark = true;
        for (const VEdge& e : node->succ) {
            if (e.node != nullptr && e.node != terminal_.get() && !e.node->mark) {
                stack.push_back(e.node);
            }
        }
    }
    for (auto& [hash, bucket] : impl_->unique) {
        std::erase_if(bucket, [](const VNode* n) { return !n->mark; });
    }
    std::erase_if(impl_->unique,
                  [](const auto& entry) { return entry.second.empty(); });
    std::erase_if(pool_, [](const std::unique_ptr<VNode>& n) { return !n->mark; });
}

State Package::apply_gate(const State& state, const GateSpec& gate) {
    if (&state.package() != this) {
        throw std::invalid_argument("state belongs to a different package");
    }
    collect_if_needed();
    GateApplier applier(*this, *impl_, dims_, gate, terminal_.get());
    const VEdge result = applier.apply(state.root());
    State out = register_root(result);
    clear_operation_state();
    return out;
}

namespace {

void decode(const VEdge& edge, const std::vector<std::size_t>& dims,
            const VNode* terminal, Complex prefix, std::size_t base,
            const std::vector<std::size_t>& strides, std::vector<Complex>& out) {
    if (edge.is_zero()) {
        return;
    }
    const Complex w = prefix * edge.weight;
    if (edge.node == terminal) {
        out[base] += w;
        return;
    }
    const std::size_t level = edge.node->level;
    for (std::size_t a = 0; a < dims[level]; ++a) {
        decode(edge.node->succ[a], dims, terminal, w, base + a * strides[level],
               strides, out);
    }
}

} // namespace

std::vector<Complex> Package::to_vector(const State& state) const {
    const auto total = checked_total_dimension(dims_);
    if (!total || *total > sim::kMaxDenseDimension) {
        throw std::domain_error("state too large to decode into a dense vector");
    }
    std::vector<Complex> out(static_cast<std::size_t>(*total), Complex(0.0));
    decode(state.root(), dims_, terminal_.get(), Complex(1.0), 0,
           radix_strides(dims_), out);
    return out;
}

std::size_t Package::node_count(const State& state) const {
    std::unordered_set<const VNode*> seen;
    std::vector<const VNode*> stack;
    if (!state.root().is_zero() && state.root().node != terminal_.get()) {
        stack.push_back(state.root().node);
    }
    while (!stack.empty()) {
        const VNode* node = stack.back();
        stack.pop_back();
        if (!seen.insert(node).second) {
            continue;
        }
        for (const VEdge& e : node->succ) {
            if (!e.is_zero() && e.node != terminal_.get()) {
                stack.push_back(e.node);
            }
        }
    }
    return seen.size();
}

double Package::subtree_norm(VNode* node) const {
    if (node == terminal_.get()) {
        return 1.0;
    }
    const auto hit = impl_->norms.find(node);
    if (hit != impl_->norms.end()) {
        return hit->second;
    }
    double total = 0.0;
    for (const VEdge& e : node->succ) {
        if (!e.is_zero()) {
            total += std::norm(e.weight) * subtree_norm(e.node);
        }
    }
    impl_->norms.emplace(node, total);
    return total;
}

std::vector<std::size_t> Package::draw(const State& state, double u) const {
    std::vector<std::size_t> digits(dims_.size(), 0);
    VEdge edge = state.root();
    for (std::size_t level = 0; level < dims_.size(); ++level) {
        const double node_norm = subtree_norm(edge.node);
        double cumulative = 0.0;
        std::size_t pick = 0;
        bool chosen = false;
        for (std::size_t a = 0; a < dims_[level]; ++a) {
            const VEdge& e = edge.node->succ[a];
            if (e.is_zero()) {
                continue;
            }
            const double branch =
                std::norm(e.weight) * subtree_norm(e.node) / node_norm;
            pick = a; // last nonzero branch doubles as the numerical fallback
            if (u < cumulative + branch) {
                u = (u - cumulative) / branch; // rescale for the next level
                chosen = true;
                break;
            }
            cumulative += branch;
        }
        if (!chosen) {
            u = 0.0;
        }
        digits[level] = pick;
        edge = edge.node->succ[pick];
    }
    return digits;
}

std::string Package::dump(const State& state) const {
    std::unordered_map<const VNode*, std::size_t> ids;
    std::vector<const VNode*> order;
    std::vector<const VNode*> stack{state.root().node};
    while (!stack.empty()) {
        const VNode* node = stack.back();
        stack.pop_back();
        if (node == terminal_.get() || ids.contains(node)) {
            continue;
        }
        ids.emplace(node, order.size());
        order.push_back(node);
        for (const VEdge& e : node->succ) {
            if (!e.is_zero()) {
                stack.push_back(e.node);
            }
        }
    }
    std::string out = "root weight " + std::to_string(state.root().weight.real()) +
                      "+" + std::to_string(state.root().weight.imag()) + "i\n";
    for (const VNode* node : order) {
        out += "node " + std::to_string(ids[node]) + " level " +
               std::to_string(node->level) + ":";
        for (const VEdge& e : node->succ) {
            if (e.is_zero()) {
                out += " 0";
            } else {
                out += " (" + std::to_string(e.weight.real()) + "+" +
                       std::to_string(e.weight.imag()) + "i -> " +
                       (e.node == terminal_.get() ? std::string("T")
                                                  : std::to_string(ids[e.node])) +
                       ")";
            }
        }
        out += "\n";
    }
    return out;
}

State from_vector(const sim::StateVector& state) {
    return Package::create(state.dims)->from_vector(state);
}

State apply_gate(const State& state, const GateSpec& gate) {
    return state.package().apply_gate(state, gate);
}

std::size_t node_count(const State& state) {
    return state.package().node_count(state);
}

sim::StateVector to_vector(const State& state) {
    sim::StateVector out;
    out.dims = state.dims();
    out.amps = state.package().to_vector(state);
    return out;
}

sim::Counts sample(const State& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("sample: shots must be >= 1");
    }
    sim::Counts result;
    result.shots = shots;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        sim::ShotRng rng(seed, shot);
        const auto digits = state.package().draw(state, rng.uniform());
        ++result.counts[format_digit_key(digits)];
    }
    return result;
}

State simulate(const Circuit& circuit, std::size_t gc_threshold) {
    auto package = Package::create(circuit.dims(), gc_threshold);
    State state;
    if (circuit.initial_state()) {
        sim::StateVector initial;
        initial.dims = circuit.dims();
        initial.amps = *circuit.initial_state();
        state = package->from_vector(initial);
    } else {
        state = package->zero_state();
    }
    for (const auto& instruction : circuit.instructions()) {
        if (instruction.is_gate()) {
            state = package->apply_gate(state, instruction.gate());
        }
    }
    return state;
}

} // namespace ditkit::dd
