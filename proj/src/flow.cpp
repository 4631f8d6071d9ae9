#include "fh/flow.hpp"

#include <limits>
#include <queue>

namespace fh {

MaxFlow::MaxFlow(int nodes) : adj_(nodes), level_(nodes), iter_(nodes) {}

void MaxFlow::add_edge(int u, int v, std::int64_t cap) {
    adj_[u].push_back({v, cap, static_cast<int>(adj_[v].size())});
    adj_[v].push_back({u, 0, static_cast<int>(adj_[u].size()) - 1});
}

bool MaxFlow::bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const auto& e : adj_[u]) {
            if (e.cap > 0 && level_[e.to] < 0) {
                level_[e.to] = level_[u] + 1;
                q.push(e.to);
            }
        }
    }
    return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int u, int t, std::int64_t pushed) {
    if (u == t) return pushed;
    for (int& i = iter_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
        Edge& e = adj_[u][i];
        if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
        std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap));
        if (got > 0) {
            e.cap -= got;
            adj_[e.to][e.rev].cap += got;
            return got;
        }
    }
    return 0;
}

std::int64_t MaxFlow::run(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
        std::fill(iter_.begin(), iter_.end(), 0);
        while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
}

std::vector<bool> MaxFlow::source_side(int s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<int> q;
    seen[s] = true;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const auto& e : adj_[u]) {
            if (e.cap > 0 && !seen[e.to]) {
                seen[e.to] = true;
                q.push(e.to);
            }
        }
    }
    return seen;
}

} // namespace fh
