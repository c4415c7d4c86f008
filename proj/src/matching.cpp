#include <functional>
#include <queue>
#include <vector>

namespace gapped {
namespace detail {

// Hopcroft-Karp. Vertices are 0-based on both sides; returns the size of a
// maximum matching.
int max_bipartite_matching(const std::vector<std::vector<int>>& adj, int n_right) {
    int n_left = static_cast<int>(adj.size());
    const int NIL = -1;
    const int INF = 1 << 30;
    std::vector<int> match_l(n_left, NIL), match_r(n_right, NIL), dist(n_left);

    auto bfs = [&]() {
        std::queue<int> q;
        for (int u = 0; u < n_left; ++u) {
            if (match_l[u] == NIL) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = INF;
            }
        }
        bool found = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w == NIL) {
                    found = true;
                } else if (dist[w] == INF) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };

    std::vector<int> it;
    std::function<bool(int)> dfs = [&](int u) {
        for (int& i = it[u]; i < static_cast<int>(adj[u].size()); ++i) {
            int v = adj[u][i];
            int w = match_r[v];
            if (w == NIL || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = 1 << 30;
        return false;
    };

    int matching = 0;
    while (bfs()) {
        it.assign(n_left, 0);
        for (int u = 0; u < n_left; ++u)
            if (match_l[u] == NIL && dfs(u)) ++matching;
    }
    return matching;
}

}  // namespace detail
}  // namespace gapped
