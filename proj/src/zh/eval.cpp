#include <algorithm>
#include <numeric>

#include "catalyst/zh.hpp"

namespace catalyst::zh {

namespace {

// Table indexed by assignments of `vars`; bit k of the index is vars[k].
struct Factor {
    std::vector<int> vars;
    std::vector<RingElement> table;
};

std::size_t bit_of(const std::vector<int>& vars, int v) {
    return static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
}

// Index into `sub` of the assignment `index` over `super` (sub is a subset of super).
std::vector<std::size_t> projection(const std::vector<int>& super, const std::vector<int>& sub) {
    std::vector<std::size_t> pos;
    for (int v : sub) pos.push_back(bit_of(super, v));
    return pos;
}

std::size_t project(std::size_t index, const std::vector<std::size_t>& pos) {
    std::size_t out = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) out |= ((index >> pos[k]) & 1u) << k;
    return out;
}

Factor multiply(const std::vector<const Factor*>& fs, const Tower& tower) {
    Factor out;
    for (const Factor* f : fs) out.vars.insert(out.vars.end(), f->vars.begin(), f->vars.end());
    std::sort(out.vars.begin(), out.vars.end());
    out.vars.erase(std::unique(out.vars.begin(), out.vars.end()), out.vars.end());
    std::vector<std::vector<std::size_t>> pos;
    for (const Factor* f : fs) pos.push_back(projection(out.vars, f->vars));
    const std::size_t size = std::size_t{1} << out.vars.size();
    out.table.assign(size, tower.one());
    for (std::size_t idx = 0; idx < size; ++idx) {
        RingElement& cell = out.table[idx];
        for (std::size_t j = 0; j < fs.size(); ++j) {
            const RingElement& value = fs[j]->table[project(idx, pos[j])];
            if (value.is_one()) continue;
            cell *= value;
            if (cell.is_zero()) break;
        }
    }
    return out;
}

Factor sum_out(const Factor& f, int v) {
    const std::size_t b = bit_of(f.vars, v);
    Factor out;
    out.vars = f.vars;
    out.vars.erase(out.vars.begin() + static_cast<long>(b));
    out.table.resize(std::size_t{1} << out.vars.size());
    const std::size_t low = (std::size_t{1} << b) - 1;
    for (std::size_t idx = 0; idx < out.table.size(); ++idx) {
        const std::size_t base = (idx & low) | ((idx & ~low) << 1);
        out.table[idx] = f.table[base] + f.table[base | (std::size_t{1} << b)];
    }
    return out;
}

struct UnionFind {
    std::map<int, int> parent;
    int find(int x) {
        auto it = parent.find(x);
        if (it == parent.end()) return parent[x] = x;
        if (it->second == x) return x;
        return it->second = find(it->second);
    }
    void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Tower default_tower(const Diagram& d) {
    Tower best = Tower::clifford_t();
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind != NodeKind::H || !n.label.tower()) continue;
        if (n.label.tower()->size() > best.size()) best = Tower(n.label.tower());
    }
    return best;
}

RingMatrix eval_tensor(const Diagram& d, const EvalLimits& limits) {
    return eval_tensor(d, default_tower(d), limits);
}

RingMatrix eval_tensor(const Diagram& d, const Tower& tower, const EvalLimits& limits) {
    d.validate();
    const std::size_t n_in = d.inputs().size(), n_out = d.outputs().size();
    if (n_in + n_out > limits.max_boundary) {
        throw ZhError("diagram has " + std::to_string(n_in + n_out) + " boundary wires, cap is " +
                      std::to_string(limits.max_boundary));
    }
    if (d.internal_count() > limits.max_internal) {
        throw ZhError("diagram has " + std::to_string(d.internal_count()) + " internal nodes, cap is " +
                      std::to_string(limits.max_internal));
    }

    // Z-spiders joined by wires share one variable; every other wire gets its own.
    UnionFind uf;
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind == NodeKind::Z) uf.find(id);
    }
    for (const auto& [a, b] : d.edges()) {
        if (d.node(a).kind == NodeKind::Z && d.node(b).kind == NodeKind::Z) uf.join(a, b);
    }
    std::map<int, int> cluster_var;
    int next_var = 0;
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind != NodeKind::Z) continue;
        const int root = uf.find(id);
        if (!cluster_var.count(root)) cluster_var[root] = next_var++;
    }
    auto z_var = [&](int id) { return cluster_var.at(uf.find(id)); };

    std::map<int, std::vector<int>> h_vars;  // H-box -> variable per leg
    std::map<int, int> boundary_var;
    for (const auto& [a, b] : d.edges()) {
        const NodeKind ka = d.node(a).kind, kb = d.node(b).kind;
        if (ka == NodeKind::Z && kb == NodeKind::Z) continue;
        int v;
        if (ka == NodeKind::Z) {
            v = z_var(a);
        } else if (kb == NodeKind::Z) {
            v = z_var(b);
        } else {
            v = next_var++;
        }
        for (int end : {a, b}) {
            if (d.node(end).kind == NodeKind::H) h_vars[end].push_back(v);
            if (d.node(end).kind == NodeKind::Boundary) boundary_var[end] = v;
        }
    }

    RingElement scalar = tower.one();
    std::vector<Factor> factors;
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind == NodeKind::Star) scalar *= Dyadic(1).shifted(-1);
        if (n.kind != NodeKind::H) continue;
        Factor f;
        f.vars = h_vars[id];
        std::sort(f.vars.begin(), f.vars.end());
        f.vars.erase(std::unique(f.vars.begin(), f.vars.end()), f.vars.end());
        if (f.vars.size() > limits.max_factor_vars) throw ZhError("H-box arity exceeds the factor cap");
        f.table.assign(std::size_t{1} << f.vars.size(), tower.one());
        f.table.back() = label_of(n, tower);
        factors.push_back(std::move(f));
    }

    std::vector<int> boundary_vars;
    for (const auto& [id, v] : boundary_var) boundary_vars.push_back(v);
    std::sort(boundary_vars.begin(), boundary_vars.end());
    boundary_vars.erase(std::unique(boundary_vars.begin(), boundary_vars.end()), boundary_vars.end());

    // Greedy elimination: always sum out the variable whose combined factor is smallest.
    std::vector<bool> internal(static_cast<std::size_t>(next_var), true);
    for (int v : boundary_vars) internal[static_cast<std::size_t>(v)] = false;
    std::vector<int> pending;
    for (int v = 0; v < next_var; ++v) {
        if (internal[static_cast<std::size_t>(v)]) pending.push_back(v);
    }
    while (!pending.empty()) {
        std::size_t best_k = 0, best_size = SIZE_MAX;
        for (std::size_t k = 0; k < pending.size(); ++k) {
            std::vector<int> u;
            for (const auto& f : factors) {
                if (std::binary_search(f.vars.begin(), f.vars.end(), pending[k])) {
                    u.insert(u.end(), f.vars.begin(), f.vars.end());
                }
            }
            std::sort(u.begin(), u.end());
            const std::size_t size = static_cast<std::size_t>(std::unique(u.begin(), u.end()) - u.begin());
            if (size < best_size) best_size = size, best_k = k;
        }
        const int v = pending[best_k];
        pending.erase(pending.begin() + static_cast<long>(best_k));
        if (best_size == 0) {
            scalar *= Dyadic(2);  // unconstrained: both values contribute
            continue;
        }
        if (best_size > limits.max_factor_vars) {
            throw ZhError("contraction needs a factor over " + std::to_string(best_size) +
                          " variables, cap is " + std::to_string(limits.max_factor_vars));
        }
        std::vector<const Factor*> touching;
        std::vector<Factor> rest;
        for (auto& f : factors) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), v)) {
                touching.push_back(&f);
            }
        }
        Factor combined = sum_out(multiply(touching, tower), v);
        for (auto& f : factors) {
            if (!std::binary_search(f.vars.begin(), f.vars.end(), v)) rest.push_back(std::move(f));
        }
        rest.push_back(std::move(combined));
        factors = std::move(rest);
    }

    std::vector<const Factor*> all;
    for (const auto& f : factors) all.push_back(&f);
    Factor final_factor = multiply(all, tower);
    for (auto& x : final_factor.table) x *= scalar;

    RingMatrix m(std::size_t{1} << n_out, std::size_t{1} << n_in);
    // Wire k of a list is bit (size-1-k) of the index, so the first wire is most significant.
    auto assign = [&](std::size_t index, const std::vector<int>& ids, std::map<int, int>& values) {
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const int v = boundary_var.at(ids[k]);
            const int bit = static_cast<int>((index >> (ids.size() - 1 - k)) & 1u);
            auto [it, fresh] = values.emplace(v, bit);
            if (!fresh && it->second != bit) return false;
        }
        return true;
    };
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::map<int, int> values;
            if (!assign(r, d.outputs(), values) || !assign(c, d.inputs(), values)) {
                m(r, c) = tower.zero();
                continue;
            }
            std::size_t idx = 0;
            for (std::size_t k = 0; k < final_factor.vars.size(); ++k) {
                idx |= static_cast<std::size_t>(values.at(final_factor.vars[k])) << k;
            }
            m(r, c) = final_factor.table[idx];
        }
    }
    return m;
}

bool semantic_equal(const Diagram& a, const Diagram& b, const EvalLimits& limits) {
    if (a.inputs().size() != b.inputs().size() || a.outputs().size() != b.outputs().size()) return false;
    Tower ta = default_tower(a), tb = default_tower(b);
    Tower t = ta.size() >= tb.size() ? ta : tb;
    return eval_tensor(a, t, limits) == eval_tensor(b, t, limits);
}

}  // namespace catalyst::zh
