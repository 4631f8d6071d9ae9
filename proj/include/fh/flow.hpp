#pragma once

#include <cstdint>
#include <vector>

namespace fh {

// Dinic max-flow on small graphs. Used for the max-weight-closure
// computation behind dim / self-sufficient closure.
class MaxFlow {
public:
    explicit MaxFlow(int nodes);

    void add_edge(int u, int v, std::int64_t cap);
    std::int64_t run(int source, int sink);

    // Nodes reachable from `source` in the residual graph (call after run).
    std::vector<bool> source_side(int source) const;

private:
    struct Edge {
        int to;
        std::int64_t cap;
        int rev;
    };
    bool bfs(int s, int t);
    std::int64_t dfs(int u, int t, std::int64_t pushed);

    std::vector<std::vector<Edge>> adj_;
    std::vector<int> level_, iter_;
};

} // namespace fh
