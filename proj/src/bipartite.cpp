#include "tonnetz/bipartite.hpp"

#include <limits>
#include <queue>

namespace tonnetz {

namespace {

constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
public:
    HopcroftKarp(const std::vector<std::vector<std::size_t>>& adj, std::size_t right_count)
        : adj_(adj), match_left_(adj.size(), kFree), match_right_(right_count, kFree), dist_(adj.size())
    {
    }

    std::size_t run()
    {
        std::size_t matched = 0;
        while (bfs())
            for (std::size_t l = 0; l < adj_.size(); ++l)
                if (match_left_[l] == kFree && dfs(l))
                    ++matched;
        return matched;
    }

private:
    bool bfs()
    {
        std::queue<std::size_t> q;
        for (std::size_t l = 0; l < adj_.size(); ++l) {
            if (match_left_[l] == kFree) {
                dist_[l] = 0;
                q.push(l);
            } else {
                dist_[l] = kInf;
            }
        }
        bool found = false;
        while (!q.empty()) {
            const std::size_t l = q.front();
            q.pop();
            for (std::size_t r : adj_[l]) {
                const std::size_t next = match_right_[r];
                if (next == kFree) {
                    found = true;
                } else if (dist_[next] == kInf) {
                    dist_[next] = dist_[l] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t l)
    {
        for (std::size_t r : adj_[l]) {
            const std::size_t next = match_right_[r];
            if (next == kFree || (dist_[next] == dist_[l] + 1 && dfs(next))) {
                match_left_[l] = r;
                match_right_[r] = l;
                return true;
            }
        }
        dist_[l] = kInf;
        return false;
    }

    const std::vector<std::vector<std::size_t>>& adj_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<std::size_t> dist_;
};

} // namespace

std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adjacency, std::size_t right_count)
{
    return HopcroftKarp(adjacency, right_count).run();
}

} // namespace tonnetz
