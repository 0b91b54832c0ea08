#pragma once

#include "cqv/chars.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqv {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

inline bool is_valid_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1) return false;
    if (i + 1 < p.size() && p[i + 1] > p[i]) return false;
  }
  return true;
}

/// Cell of a component diagram. Convention: (i,j) is a cell of p iff
/// i < p[j]; i is the q-exponent (column), j the t-exponent (row).
struct Box {
  int comp = 0;
  int i = 0;
  int j = 0;
  auto operator<=>(const Box&) const = default;
};

struct Multipartition {
  std::vector<Partition> parts;

  int total() const {
    int s = 0;
    for (const auto& p : parts) s += std::accumulate(p.begin(), p.end(), 0);
    return s;
  }

  friend bool operator==(const Multipartition& a, const Multipartition& b) = default;

  // canonical order: total boxes, then lexicographic on serialized parts
  friend bool operator<(const Multipartition& a, const Multipartition& b) {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a.parts < b.parts;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t a = 0; a < parts.size(); ++a) {
      if (a) os << ",";
      os << "[";
      for (std::size_t i = 0; i < parts[a].size(); ++i) {
        if (i) os << ",";
        os << parts[a][i];
      }
      os << "]";
    }
    os << "]";
    return os.str();
  }
};

inline int box_residue(const ModelConfig& cfg, const Box& b) {
  int r = (cfg.color(b.comp) + b.i - b.j) % cfg.n;
  return r < 0 ? r + cfg.n : r;
}

/// Cells that can be added to one component keeping a partition shape.
inline std::vector<Box> addable_cells(const Partition& p, int comp) {
  std::vector<Box> out;
  int rows = static_cast<int>(p.size());
  for (int j = 0; j <= rows; ++j) {
    int i = j < rows ? p[j] : 0;
    if (j == 0 || p[j - 1] > i) out.push_back(Box{comp, i, j});
  }
  return out;
}

inline std::vector<Box> removable_cells(const Partition& p, int comp) {
  std::vector<Box> out;
  int rows = static_cast<int>(p.size());
  for (int j = 0; j < rows; ++j) {
    if (j == rows - 1 || p[j + 1] < p[j]) out.push_back(Box{comp, p[j] - 1, j});
  }
  return out;
}

inline std::vector<Box> addable_boxes(const ModelConfig& cfg, const Multipartition& mp, int k) {
  std::vector<Box> out;
  for (int a = 0; a < cfg.w; ++a)
    for (const Box& b : addable_cells(mp.parts[a], a))
      if (box_residue(cfg, b) == ((k % cfg.n) + cfg.n) % cfg.n) out.push_back(b);
  return out;
}

inline std::vector<Box> removable_boxes(const ModelConfig& cfg, const Multipartition& mp, int k) {
  std::vector<Box> out;
  for (int a = 0; a < cfg.w; ++a)
    for (const Box& b : removable_cells(mp.parts[a], a))
      if (box_residue(cfg, b) == ((k % cfg.n) + cfg.n) % cfg.n) out.push_back(b);
  return out;
}

inline Multipartition add_box(const Multipartition& mp, const Box& b) {
  Multipartition out = mp;
  auto& p = out.parts[b.comp];
  if (b.j == static_cast<int>(p.size()))
    p.push_back(1);
  else
    p[b.j] += 1;
  if (!is_valid_partition(p)) throw std::invalid_argument("add_box: cell is not addable");
  return out;
}

inline Multipartition remove_box(const Multipartition& mp, const Box& b) {
  Multipartition out = mp;
  auto& p = out.parts[b.comp];
  if (b.j >= static_cast<int>(p.size()) || p[b.j] != b.i + 1)
    throw std::invalid_argument("remove_box: cell is not removable");
  p[b.j] -= 1;
  if (p[b.j] == 0) p.erase(p.begin() + b.j);
  if (!is_valid_partition(p)) throw std::invalid_argument("remove_box: cell is not removable");
  return out;
}

inline std::vector<Partition> partitions_of(int m) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int rem, int mx) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int first = std::min(rem, mx); first >= 1; --first) {
      cur.push_back(first);
      self(self, rem - first, first);
      cur.pop_back();
    }
  };
  rec(rec, m, m);
  return out;
}

/// All multipartitions with at most N total boxes, in the canonical graded
/// order (total boxes, then lexicographic on serialized parts).
inline std::vector<Multipartition> enumerate_multipartitions(int w, int N) {
  std::vector<Multipartition> out;
  std::vector<int> comp(w, 0);
  for (int total = 0; total <= N; ++total) {
    auto rec = [&](auto&& self, int a, int rem) -> void {
      if (a == w - 1) {
        comp[a] = rem;
        std::vector<std::vector<Partition>> choices;
        for (int c : comp) choices.push_back(partitions_of(c));
        std::vector<std::size_t> pick(w, 0);
        while (true) {
          Multipartition mp;
          mp.parts.reserve(w);
          for (int b = 0; b < w; ++b) mp.parts.push_back(choices[b][pick[b]]);
          out.push_back(std::move(mp));
          int b = w - 1;
          while (b >= 0 && ++pick[b] == choices[b].size()) pick[b--] = 0;
          if (b < 0) break;
        }
        return;
      }
      for (int c = 0; c <= rem; ++c) {
        comp[a] = c;
        self(self, a + 1, rem - c);
      }
    };
    rec(rec, 0, total);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// mu in up(lambda,k) adds one residue-k box; down removes one.
inline std::vector<Multipartition> neighbors_up(const ModelConfig& cfg, const Multipartition& mp,
                                                int k) {
  std::vector<Multipartition> out;
  for (const Box& b : addable_boxes(cfg, mp, k)) out.push_back(add_box(mp, b));
  return out;
}

inline std::vector<Multipartition> neighbors_down(const ModelConfig& cfg, const Multipartition& mp,
                                                  int k) {
  std::vector<Multipartition> out;
  for (const Box& b : removable_boxes(cfg, mp, k)) out.push_back(remove_box(mp, b));
  return out;
}

/// Residue-count vector v_{lambda,k}, k = 0..n-1.
inline std::vector<int> residue_counts(const ModelConfig& cfg, const Multipartition& mp) {
  std::vector<int> v(cfg.n, 0);
  for (int a = 0; a < cfg.w; ++a)
    for (int j = 0; j < static_cast<int>(mp.parts[a].size()); ++j)
      for (int i = 0; i < mp.parts[a][j]; ++i) v[box_residue(cfg, Box{a, i, j})] += 1;
  return v;
}

}  // namespace cqv
