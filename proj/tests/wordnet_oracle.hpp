#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "gepc/wordnet.hpp"

namespace gepc::testing {

// Independent path-distance oracle: enumerate every hypernym path to a root
// and take the cheapest meeting point over all path pairs.
inline void root_paths(const wordnet::SynsetGraph& g, wordnet::SynsetIndex s, std::vector<wordnet::SynsetIndex>& cur,
                       std::vector<std::vector<wordnet::SynsetIndex>>& out) {
  cur.push_back(s);
  bool extended = false;
  for (auto h : g.synset(s).hypernyms) {
    if (std::find(cur.begin(), cur.end(), h) != cur.end()) continue;  // verb hypernym cycles exist
    root_paths(g, h, cur, out);
    extended = true;
  }
  if (!extended) out.push_back(cur);
  cur.pop_back();
}

inline std::optional<std::size_t> oracle_distance(const wordnet::SynsetGraph& g, wordnet::SynsetIndex a,
                                                  wordnet::SynsetIndex b, bool virtual_root) {
  std::vector<wordnet::SynsetIndex> cur;
  std::vector<std::vector<wordnet::SynsetIndex>> pa, pb;
  root_paths(g, a, cur, pa);
  root_paths(g, b, cur, pb);
  std::optional<std::size_t> best;
  auto offer = [&](std::size_t d) {
    if (!best || d < *best) best = d;
  };
  for (const auto& p : pa)
    for (const auto& q : pb) {
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
          if (p[i] == q[j]) offer(i + j);
      if (virtual_root) offer(p.size() + q.size());
    }
  return best;
}

}  // namespace gepc::testing
