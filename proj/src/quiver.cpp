#include "tauseq/quiver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tauseq {

bool Quiver::has_loops() const {
  for (const auto& a : arrows)
    if (a.source == a.target) return true;
  return false;
}

bool Quiver::is_acyclic() const {
  std::vector<int> indeg(vertices, 0);
  for (const auto& a : arrows) indeg[a.target]++;
  std::vector<int> stack;
  for (int v = 0; v < vertices; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (const auto& a : arrows)
      if (a.source == v && --indeg[a.target] == 0) stack.push_back(a.target);
  }
  return seen == vertices;
}

bool Quiver::is_dynkin() const {
  if (has_loops() || !is_acyclic()) return false;
  // symmetrized Tits form; positive definite iff all leading minors positive
  Mat s = Mat::Zero(vertices, vertices);
  for (int v = 0; v < vertices; ++v) s(v, v) = Rational(2);
  for (const auto& a : arrows) {
    s(a.source, a.target) -= Rational(1);
    s(a.target, a.source) -= Rational(1);
  }
  for (int k = 1; k <= vertices; ++k) {
    Mat minor = s.topLeftCorner(k, k);
    // exact determinant by fraction-free-ish elimination on the minor
    Mat m = minor;
    Rational det(1);
    for (int col = 0; col < k; ++col) {
      int pr = -1;
      for (int i = col; i < k; ++i)
        if (!m(i, col).is_zero()) { pr = i; break; }
      if (pr < 0) return false;
      if (pr != col) {
        m.row(pr).swap(m.row(col));
        det = -det;
      }
      det *= m(col, col);
      const Rational inv = Rational(1) / m(col, col);
      for (int i = col + 1; i < k; ++i) {
        const Rational f = m(i, col) * inv;
        if (f.is_zero()) continue;
        for (int j = col; j < k; ++j) m(i, j) -= f * m(col, j);
      }
    }
    if (!(Rational(0) < det)) return false;
  }
  return true;
}

std::vector<std::vector<long>> Quiver::positive_roots() const {
  if (!is_dynkin()) throw std::domain_error("positive_roots: quiver is not of Dynkin type");
  // adjacency multiplicities of the underlying graph
  std::vector<std::vector<long>> adj(vertices, std::vector<long>(vertices, 0));
  for (const auto& a : arrows) {
    adj[a.source][a.target]++;
    adj[a.target][a.source]++;
  }
  std::set<std::vector<long>> roots;
  std::vector<std::vector<long>> frontier;
  for (int v = 0; v < vertices; ++v) {
    std::vector<long> simple(vertices, 0);
    simple[v] = 1;
    roots.insert(simple);
    frontier.push_back(simple);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& d : frontier) {
      for (int i = 0; i < vertices; ++i) {
        // simple reflection s_i
        long pairing = 2 * d[i];
        for (int j = 0; j < vertices; ++j) pairing -= adj[i][j] * d[j];
        std::vector<long> r = d;
        r[i] -= pairing;
        if (roots.insert(r).second) next.push_back(r);
      }
    }
    frontier.swap(next);
  }
  std::vector<std::vector<long>> positive;
  for (const auto& r : roots) {
    bool pos = true, nonzero = false;
    for (long c : r) {
      if (c < 0) pos = false;
      if (c != 0) nonzero = true;
    }
    if (pos && nonzero) positive.push_back(r);
  }
  std::sort(positive.begin(), positive.end());
  return positive;
}

Quiver linear_quiver(int n) {
  Quiver q;
  q.vertices = n;
  for (int i = 0; i + 1 < n; ++i) {
    std::string name = (n <= 3 && i == 0) ? "a" : (n <= 3 && i == 1) ? "b" : "a" + std::to_string(i + 1);
    q.arrows.push_back({name, i, i + 1});
  }
  return q;
}

Quiver d4_subspace_quiver() {
  Quiver q;
  q.vertices = 4;
  q.arrows.push_back({"a", 0, 3});
  q.arrows.push_back({"b", 1, 3});
  q.arrows.push_back({"c", 2, 3});
  return q;
}

}  // namespace tauseq
