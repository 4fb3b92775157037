#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "safebribe/errors.hpp"

namespace safebribe {

// Marks an arc without a finite capacity. Internally replaced by the sentinel
// (sum of finite capacities + sum of lower bounds + 1), which bounds any flow
// the constructions in this library can route.
inline constexpr long long kInfiniteCap = -1;

struct Arc {
    int from = 0;
    int to = 0;
    long long lower = 0;
    long long capacity = 0;  // kInfiniteCap for unbounded
    long long cost = 0;
};

struct FlowNetwork {
    int num_nodes = 0;
    int source = 0;
    int sink = 0;
    std::vector<Arc> arcs;

    int add_node() { return num_nodes++; }
    int add_arc(int from, int to, long long lower, long long capacity, long long cost = 0) {
        arcs.push_back({from, to, lower, capacity, cost});
        return static_cast<int>(arcs.size()) - 1;
    }

    long long infinite_sentinel() const {
        long long total = 1;
        for (const Arc& a : arcs) {
            if (a.capacity != kInfiniteCap) total += a.capacity;
            total += a.lower;
        }
        return total;
    }

    void validate() const {
        for (const Arc& a : arcs) {
            if (a.from < 0 || a.from >= num_nodes || a.to < 0 || a.to >= num_nodes)
                throw PreconditionError("arc endpoint outside node range");
            if (a.lower < 0) throw PreconditionError("negative lower bound");
            if (a.capacity != kInfiniteCap && a.capacity < a.lower)
                throw PreconditionError("capacity below lower bound");
            if (a.to == source) throw PreconditionError("source must have no incoming arcs");
            if (a.from == sink) throw PreconditionError("sink must have no outgoing arcs");
        }
    }
};

struct FlowAssignment {
    std::vector<long long> flow;  // aligned with FlowNetwork::arcs
    long long value = 0;          // total s -> t flow
    long long cost = 0;           // sum of flow * cost
};

// Conservation and window check, run on every solver result.
inline void validate_assignment(const FlowNetwork& net, const FlowAssignment& fa) {
    if (fa.flow.size() != net.arcs.size()) throw Error("flow assignment size mismatch");
    const long long sentinel = net.infinite_sentinel();
    std::vector<long long> balance(static_cast<size_t>(net.num_nodes), 0);
    for (size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        const long long f = fa.flow[i];
        const long long cap = a.capacity == kInfiniteCap ? sentinel : a.capacity;
        if (f < a.lower || f > cap) throw Error("flow outside [lower, capacity] window");
        balance[static_cast<size_t>(a.from)] -= f;
        balance[static_cast<size_t>(a.to)] += f;
    }
    for (int v = 0; v < net.num_nodes; ++v) {
        if (v == net.source || v == net.sink) continue;
        if (balance[static_cast<size_t>(v)] != 0) throw Error("flow conservation violated");
    }
    if (balance[static_cast<size_t>(net.sink)] != fa.value ||
        balance[static_cast<size_t>(net.source)] != -fa.value)
        throw Error("flow value does not match assignment");
}

namespace detail {

// Residual graph shared by the max-flow and min-cost solvers. Deterministic:
// edges are scanned in insertion order everywhere.
class Residual {
public:
    explicit Residual(int n) : head_(static_cast<size_t>(n), -1), n_(n) {}

    int add_edge(int u, int v, long long cap, long long cost = 0) {
        const int id = static_cast<int>(to_.size());
        to_.push_back(v);
        cap_.push_back(cap);
        cost_.push_back(cost);
        next_.push_back(head_[static_cast<size_t>(u)]);
        head_[static_cast<size_t>(u)] = id;
        to_.push_back(u);
        cap_.push_back(0);
        cost_.push_back(-cost);
        next_.push_back(head_[static_cast<size_t>(v)]);
        head_[static_cast<size_t>(v)] = id + 1;
        return id;
    }

    // Flow pushed through forward edge id equals the residual on its twin.
    long long flow_on(int id) const { return cap_[static_cast<size_t>(id) + 1]; }

    void disable_edge(int id) {
        cap_[static_cast<size_t>(id)] = 0;
        cap_[static_cast<size_t>(id) + 1] = 0;
    }

    // Edmonds-Karp: BFS shortest augmenting paths.
    long long max_flow(int s, int t) {
        long long total = 0;
        std::vector<int> parent_edge(static_cast<size_t>(n_));
        while (true) {
            std::fill(parent_edge.begin(), parent_edge.end(), -1);
            std::queue<int> bfs;
            bfs.push(s);
            parent_edge[static_cast<size_t>(s)] = -2;
            while (!bfs.empty() && parent_edge[static_cast<size_t>(t)] == -1) {
                const int u = bfs.front();
                bfs.pop();
                for (int e = head_[static_cast<size_t>(u)]; e != -1;
                     e = next_[static_cast<size_t>(e)]) {
                    const int v = to_[static_cast<size_t>(e)];
                    if (cap_[static_cast<size_t>(e)] > 0 &&
                        parent_edge[static_cast<size_t>(v)] == -1) {
                        parent_edge[static_cast<size_t>(v)] = e;
                        bfs.push(v);
                    }
                }
            }
            if (parent_edge[static_cast<size_t>(t)] == -1) break;
            long long push = std::numeric_limits<long long>::max();
            for (int v = t; v != s;) {
                const int e = parent_edge[static_cast<size_t>(v)];
                push = std::min(push, cap_[static_cast<size_t>(e)]);
                v = to_[static_cast<size_t>(e ^ 1)];
            }
            for (int v = t; v != s;) {
                const int e = parent_edge[static_cast<size_t>(v)];
                cap_[static_cast<size_t>(e)] -= push;
                cap_[static_cast<size_t>(e ^ 1)] += push;
                v = to_[static_cast<size_t>(e ^ 1)];
            }
            total += push;
        }
        return total;
    }

    // Successive shortest augmenting paths with Bellman-Ford distances.
    // Augments until the maximum flow is reached; returns (value, cost).
    std::pair<long long, long long> min_cost_max_flow(int s, int t) {
        long long total_flow = 0, total_cost = 0;
        const long long inf = std::numeric_limits<long long>::max() / 4;
        std::vector<long long> dist(static_cast<size_t>(n_));
        std::vector<int> parent_edge(static_cast<size_t>(n_));
        std::vector<char> in_queue(static_cast<size_t>(n_));
        while (true) {
            std::fill(dist.begin(), dist.end(), inf);
            std::fill(parent_edge.begin(), parent_edge.end(), -1);
            std::fill(in_queue.begin(), in_queue.end(), 0);
            dist[static_cast<size_t>(s)] = 0;
            std::queue<int> spfa;
            spfa.push(s);
            in_queue[static_cast<size_t>(s)] = 1;
            while (!spfa.empty()) {
                const int u = spfa.front();
                spfa.pop();
                in_queue[static_cast<size_t>(u)] = 0;
                for (int e = head_[static_cast<size_t>(u)]; e != -1;
                     e = next_[static_cast<size_t>(e)]) {
                    const int v = to_[static_cast<size_t>(e)];
                    if (cap_[static_cast<size_t>(e)] <= 0) continue;
                    const long long nd = dist[static_cast<size_t>(u)] + cost_[static_cast<size_t>(e)];
                    if (nd < dist[static_cast<size_t>(v)]) {
                        dist[static_cast<size_t>(v)] = nd;
                        parent_edge[static_cast<size_t>(v)] = e;
                        if (!in_queue[static_cast<size_t>(v)]) {
                            in_queue[static_cast<size_t>(v)] = 1;
                            spfa.push(v);
                        }
                    }
                }
            }
            if (dist[static_cast<size_t>(t)] >= inf) break;
            long long push = std::numeric_limits<long long>::max();
            for (int v = t; v != s;) {
                const int e = parent_edge[static_cast<size_t>(v)];
                push = std::min(push, cap_[static_cast<size_t>(e)]);
                v = to_[static_cast<size_t>(e ^ 1)];
            }
            for (int v = t; v != s;) {
                const int e = parent_edge[static_cast<size_t>(v)];
                cap_[static_cast<size_t>(e)] -= push;
                cap_[static_cast<size_t>(e ^ 1)] += push;
                v = to_[static_cast<size_t>(e ^ 1)];
            }
            total_flow += push;
            total_cost += push * dist[static_cast<size_t>(t)];
        }
        return {total_flow, total_cost};
    }

private:
    std::vector<int> to_;
    std::vector<long long> cap_;
    std::vector<long long> cost_;
    std::vector<int> next_;
    std::vector<int> head_;
    int n_;
};

}  // namespace detail

// Maximum s-t flow of a network without lower bounds.
inline FlowAssignment max_flow(const FlowNetwork& net) {
    net.validate();
    for (const Arc& a : net.arcs)
        if (a.lower != 0)
            throw OperationError("max_flow requires zero lower bounds; use feasible_flow");
    const long long sentinel = net.infinite_sentinel();
    detail::Residual g(net.num_nodes);
    std::vector<int> ids;
    ids.reserve(net.arcs.size());
    for (const Arc& a : net.arcs)
        ids.push_back(
            g.add_edge(a.from, a.to, a.capacity == kInfiniteCap ? sentinel : a.capacity, 0));
    FlowAssignment fa;
    fa.value = g.max_flow(net.source, net.sink);
    for (size_t i = 0; i < net.arcs.size(); ++i) fa.flow.push_back(g.flow_on(ids[i]));
    fa.cost = 0;
    for (size_t i = 0; i < net.arcs.size(); ++i) fa.cost += fa.flow[i] * net.arcs[i].cost;
    validate_assignment(net, fa);
    return fa;
}

// Integral flow honoring every [lower, capacity] window, of maximum s-t value,
// via the standard lower-bound elimination; nullopt when no flow meets the
// lower bounds.
inline std::optional<FlowAssignment> feasible_flow(const FlowNetwork& net) {
    net.validate();
    const long long sentinel = net.infinite_sentinel();
    const int n = net.num_nodes;
    const int super_s = n, super_t = n + 1;
    detail::Residual g(n + 2);
    std::vector<int> ids;
    ids.reserve(net.arcs.size());
    std::vector<long long> excess(static_cast<size_t>(n), 0);
    for (const Arc& a : net.arcs) {
        const long long cap = a.capacity == kInfiniteCap ? sentinel : a.capacity;
        ids.push_back(g.add_edge(a.from, a.to, cap - a.lower, 0));
        excess[static_cast<size_t>(a.to)] += a.lower;
        excess[static_cast<size_t>(a.from)] -= a.lower;
    }
    const int loop_id = g.add_edge(net.sink, net.source, sentinel, 0);
    long long need = 0;
    for (int v = 0; v < n; ++v) {
        if (excess[static_cast<size_t>(v)] > 0) {
            g.add_edge(super_s, v, excess[static_cast<size_t>(v)], 0);
            need += excess[static_cast<size_t>(v)];
        } else if (excess[static_cast<size_t>(v)] < 0) {
            g.add_edge(v, super_t, -excess[static_cast<size_t>(v)], 0);
        }
    }
    if (g.max_flow(super_s, super_t) != need) return std::nullopt;
    // A feasible circulation exists; drop the t->s helper arc and maximize the
    // s-t value on top of it.
    long long value = g.flow_on(loop_id);
    g.disable_edge(loop_id);
    value += g.max_flow(net.source, net.sink);
    FlowAssignment fa;
    fa.value = value;
    for (size_t i = 0; i < net.arcs.size(); ++i)
        fa.flow.push_back(net.arcs[i].lower + g.flow_on(ids[i]));
    fa.cost = 0;
    for (size_t i = 0; i < net.arcs.size(); ++i) fa.cost += fa.flow[i] * net.arcs[i].cost;
    validate_assignment(net, fa);
    return fa;
}

// Minimum-cost integral flow of exactly required_value, windows respected.
// Arc costs must be non-negative (all networks in this library price arcs).
inline std::optional<FlowAssignment> min_cost_flow(const FlowNetwork& net,
                                                   long long required_value) {
    net.validate();
    if (required_value < 0) throw PreconditionError("required flow value must be non-negative");
    for (const Arc& a : net.arcs)
        if (a.cost < 0) throw PreconditionError("min_cost_flow requires non-negative costs");
    const long long sentinel = net.infinite_sentinel();
    const int n = net.num_nodes;
    const int super_s = n, super_t = n + 1;
    detail::Residual g(n + 2);
    std::vector<int> ids;
    ids.reserve(net.arcs.size());
    std::vector<long long> excess(static_cast<size_t>(n), 0);
    for (const Arc& a : net.arcs) {
        const long long cap = a.capacity == kInfiniteCap ? sentinel : a.capacity;
        ids.push_back(g.add_edge(a.from, a.to, cap - a.lower, a.cost));
        excess[static_cast<size_t>(a.to)] += a.lower;
        excess[static_cast<size_t>(a.from)] -= a.lower;
    }
    // The required value acts as a saturated t->s arc with lower = capacity.
    excess[static_cast<size_t>(net.source)] += required_value;
    excess[static_cast<size_t>(net.sink)] -= required_value;
    long long need = 0;
    for (int v = 0; v < n; ++v) {
        if (excess[static_cast<size_t>(v)] > 0) {
            g.add_edge(super_s, v, excess[static_cast<size_t>(v)], 0);
            need += excess[static_cast<size_t>(v)];
        } else if (excess[static_cast<size_t>(v)] < 0) {
            g.add_edge(v, super_t, -excess[static_cast<size_t>(v)], 0);
        }
    }
    const auto [value, cost] = g.min_cost_max_flow(super_s, super_t);
    (void)cost;
    if (value != need) return std::nullopt;
    FlowAssignment fa;
    fa.value = required_value;
    for (size_t i = 0; i < net.arcs.size(); ++i)
        fa.flow.push_back(net.arcs[i].lower + g.flow_on(ids[i]));
    fa.cost = 0;
    for (size_t i = 0; i < net.arcs.size(); ++i) fa.cost += fa.flow[i] * net.arcs[i].cost;
    validate_assignment(net, fa);
    return fa;
}

}  // namespace safebribe
