#include "tauseq/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tauseq {

Vec Algebra::basis_vec(int b) const {
  Vec v = Vec::Zero(dim);
  v(b) = Rational(1);
  return v;
}

Vec Algebra::multiply(const Vec& a, const Vec& b) const {
  Vec out = Vec::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (a(i).is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (b(j).is_zero()) continue;
      out += mult_table.row(i * dim + j).transpose() * (a(i) * b(j));
    }
  }
  return out;
}

Vec Algebra::mult_basis(int i, int j) const { return mult_table.row(i * dim + j).transpose(); }

std::vector<int> Algebra::block_basis(int src, int tgt) const {
  std::vector<int> out;
  for (int b = 0; b < dim; ++b)
    if (basis_src[b] == src && basis_tgt[b] == tgt) out.push_back(b);
  return out;
}

int Algebra::block_dim(int src, int tgt) const { return (int)block_basis(src, tgt).size(); }

Mat Algebra::cartan_matrix() const {
  Mat c = Mat::Zero(verts, verts);
  for (int b = 0; b < dim; ++b) c(basis_tgt[b], basis_src[b]) += Rational(1);
  return c;
}

std::vector<int> Algebra::radical_series_dims() const {
  std::vector<int> dims{dim};
  Mat power(dim, (Eigen::Index)radical_basis.size());
  for (std::size_t k = 0; k < radical_basis.size(); ++k) power.col((Eigen::Index)k) = basis_vec(radical_basis[k]);
  while (power.cols() > 0) {
    dims.push_back((int)power.cols());
    std::vector<Vec> prods;
    for (Eigen::Index c = 0; c < power.cols(); ++c)
      for (int r : radical_basis) prods.push_back(multiply(basis_vec(r), Vec(power.col(c))));
    Mat span(dim, (Eigen::Index)prods.size());
    for (std::size_t k = 0; k < prods.size(); ++k) span.col((Eigen::Index)k) = prods[k];
    power = column_space_basis(span);
  }
  return dims;
}

int Algebra::generator_index(const std::string& name) const {
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens[g].name == name) return (int)g;
  return -1;
}

Algebra::Ptr Algebra::opposite() const {
  std::lock_guard<std::mutex> lock(op_mutex_);
  if (op_cache_) return op_cache_;
  auto op = std::make_shared<Algebra>();
  op->id = id + "^op";
  op->verts = verts;
  op->dim = dim;
  op->basis_src = basis_tgt;
  op->basis_tgt = basis_src;
  op->gen_basis = gen_basis;
  op->gen_elem = gen_elem;
  for (const auto& g : gens) op->gens.push_back({g.name, g.target, g.source});
  op->mult_table = Mat(dim * dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) op->mult_table.row(i * dim + j) = mult_table.row(j * dim + i);
  op->expr.resize(dim);
  for (int b = 0; b < dim; ++b)
    for (const auto& t : expr[b]) {
      ExprTerm rt;
      rt.coeff = t.coeff;
      rt.word.assign(t.word.rbegin(), t.word.rend());
      rt.source = basis_tgt[b];  // opposite source
      op->expr[b].push_back(std::move(rt));
    }
  op->radical_basis = radical_basis;
  op->rad_nilpotency = rad_nilpotency;
  op->hereditary = hereditary;
  op->op_cache_ = shared_from_this();  // (A^op)^op is A itself
  op_cache_ = op;
  return op_cache_;
}

// ---------------------------------------------------------------------------
// path algebra construction
// ---------------------------------------------------------------------------

namespace {

struct PathRegistry {
  const Quiver& q;
  std::vector<Path> paths;                       // by id
  std::map<std::pair<int, std::vector<int>>, int> index;
  std::vector<std::vector<int>> by_length;       // ids per length

  explicit PathRegistry(const Quiver& quiver) : q(quiver) {
    by_length.emplace_back();
    for (int v = 0; v < q.vertices; ++v) add(Path{v, {}});
  }

  int tgt(const Path& p) const { return p.arrows.empty() ? p.source : q.arrows[p.arrows.back()].target; }

  int add(const Path& p) {
    auto key = std::make_pair(p.source, p.arrows);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = (int)paths.size();
    paths.push_back(p);
    index.emplace(std::move(key), id);
    while ((int)by_length.size() <= p.length()) by_length.emplace_back();
    by_length[p.length()].push_back(id);
    return id;
  }

  /// Ensure all paths of length <= len exist.
  void extend_to(int len) {
    for (int l = (int)by_length.size() - 1; l < len; ++l) {
      if ((int)by_length.size() <= l + 1) by_length.emplace_back();
      for (int id : by_length[l]) {
        Path base = paths[id];
        int end = tgt(base);
        for (int a = 0; a < (int)q.arrows.size(); ++a) {
          if (q.arrows[a].source != end) continue;
          Path ext = base;
          ext.arrows.push_back(a);
          add(ext);
        }
      }
    }
  }

  int max_length() const { return (int)by_length.size() - 1; }

  /// Path order used for leading terms: longer first, then lex on arrows,
  /// then source vertex.
  bool greater(int a, int b) const {
    const Path& pa = paths[a];
    const Path& pb = paths[b];
    if (pa.length() != pb.length()) return pa.length() > pb.length();
    if (pa.arrows != pb.arrows) return pa.arrows > pb.arrows;
    return pa.source > pb.source;
  }
};

using SparseRow = std::map<int, Rational>;  // path id -> coefficient

struct IdealBasis {
  PathRegistry& reg;
  // echelon rows keyed by leading path id
  std::map<int, SparseRow> rows;

  explicit IdealBasis(PathRegistry& r) : reg(r) {}

  int leading(const SparseRow& row) const {
    int best = -1;
    for (const auto& [pid, c] : row) {
      if (c.is_zero()) continue;
      if (best < 0 || reg.greater(pid, best)) best = pid;
    }
    return best;
  }

  /// Full normal form against the current rows.
  SparseRow reduce(SparseRow row) const {
    bool changed = true;
    while (changed) {
      changed = false;
      // scan support from the greatest path downwards
      std::vector<int> support;
      for (const auto& [pid, c] : row)
        if (!c.is_zero()) support.push_back(pid);
      std::sort(support.begin(), support.end(), [&](int a, int b) { return reg.greater(a, b); });
      for (int pid : support) {
        auto it = rows.find(pid);
        if (it == rows.end()) continue;
        const Rational f = row[pid];
        if (f.is_zero()) continue;
        for (const auto& [qid, c] : it->second) row[qid] -= f * c;
        changed = true;
        break;
      }
    }
    SparseRow clean;
    for (const auto& [pid, c] : row)
      if (!c.is_zero()) clean[pid] = c;
    return clean;
  }

  /// Insert after reduction; returns false when the row reduced to zero.
  bool insert(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    int lead = leading(row);
    const Rational inv = Rational(1) / row[lead];
    for (auto& [pid, c] : row) c *= inv;
    rows.emplace(lead, std::move(row));
    return true;
  }

  bool path_in_ideal(int pid) const {
    SparseRow row{{pid, Rational(1)}};
    return reduce(row).empty();
  }
};

SparseRow relation_to_row(PathRegistry& reg, const PathRelation& rel) {
  SparseRow row;
  for (const auto& term : rel) {
    reg.extend_to(term.path.length());
    row[reg.add(term.path)] += term.coeff;
  }
  return row;
}

}  // namespace

Algebra::Ptr path_algebra(const std::string& id, const Quiver& q,
                          const std::vector<PathRelation>& relations, int path_cap) {
  for (const auto& rel : relations) {
    if (rel.empty()) throw std::invalid_argument("path_algebra: empty relation");
    int s = rel.front().path.source;
    // endpoints must agree across the combination
    for (const auto& term : rel)
      if (term.path.source != s) throw std::invalid_argument("path_algebra: relation mixes sources");
  }

  PathRegistry reg(q);
  IdealBasis ideal(reg);

  int max_rel_len = 0;
  for (const auto& rel : relations) {
    for (const auto& t : rel) max_rel_len = std::max(max_rel_len, t.path.length());
    ideal.insert(relation_to_row(reg, rel));
  }
  std::vector<std::pair<int, SparseRow>> frontier;  // (frame, row)
  for (const auto& [lead, row] : ideal.rows) frontier.emplace_back(0, row);

  int cutoff = -1;
  for (int frame = 0; frame <= path_cap; ++frame) {
    reg.extend_to(frame + max_rel_len + 1);
    // termination: smallest length l <= frame with every length-l path in
    // the ideal (vacuously when no paths of that length exist)
    for (int l = 1; l <= frame; ++l) {
      reg.extend_to(l);
      bool all_in = true;
      if (l < (int)reg.by_length.size())
        for (int pid : reg.by_length[l])
          if (!ideal.path_in_ideal(pid)) { all_in = false; break; }
      if (all_in) { cutoff = l; break; }
    }
    if (cutoff >= 0) break;

    std::vector<std::pair<int, SparseRow>> next;
    for (const auto& [fr, row] : frontier) {
      if (fr != frame) { next.emplace_back(fr, row); continue; }
      for (int a = 0; a < (int)q.arrows.size(); ++a) {
        // left multiply by the arrow
        SparseRow lrow, rrow;
        for (const auto& [pid, c] : row) {
          const Path& p = reg.paths[pid];
          int pt = reg.tgt(p);
          if (q.arrows[a].source == pt) {
            Path ext = p;
            ext.arrows.push_back(a);
            lrow[reg.add(ext)] += c;
          }
          if (q.arrows[a].target == p.source) {
            Path ext;
            ext.source = q.arrows[a].source;
            ext.arrows.push_back(a);
            ext.arrows.insert(ext.arrows.end(), p.arrows.begin(), p.arrows.end());
            rrow[reg.add(ext)] += c;
          }
        }
        for (auto* r : {&lrow, &rrow}) {
          if (r->empty()) continue;
          SparseRow reduced = ideal.reduce(*r);
          if (!reduced.empty()) {
            ideal.insert(reduced);
            next.emplace_back(frame + 1, ideal.rows.at(ideal.leading(reduced)));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  if (cutoff < 0)
    throw std::domain_error("path_algebra: ideal not admissible within path-length cap (algebra may be infinite dimensional)");

  // basis: non-leading paths of length < cutoff, trivial paths first
  std::vector<int> basis_paths;
  for (int v = 0; v < q.vertices; ++v) {
    int pid = reg.index.at({v, {}});
    if (ideal.rows.count(pid)) throw std::domain_error("path_algebra: ideal is not admissible (contains idempotent component)");
    basis_paths.push_back(pid);
  }
  for (int l = 1; l < cutoff; ++l) {
    if (l >= (int)reg.by_length.size()) break;
    std::vector<int> layer = reg.by_length[l];
    std::sort(layer.begin(), layer.end(), [&](int a, int b) {
      const Path& pa = reg.paths[a];
      const Path& pb = reg.paths[b];
      if (pa.source != pb.source) return pa.source < pb.source;
      return pa.arrows < pb.arrows;
    });
    for (int pid : layer)
      if (!ideal.rows.count(pid)) basis_paths.push_back(pid);
  }
  std::map<int, int> path_to_basis;
  for (std::size_t b = 0; b < basis_paths.size(); ++b) path_to_basis[basis_paths[b]] = (int)b;

  auto alg = std::make_shared<Algebra>();
  alg->id = id;
  alg->verts = q.vertices;
  alg->dim = (int)basis_paths.size();
  alg->basis_src.resize(alg->dim);
  alg->basis_tgt.resize(alg->dim);
  for (int b = 0; b < alg->dim; ++b) {
    const Path& p = reg.paths[basis_paths[b]];
    alg->basis_src[b] = p.source;
    alg->basis_tgt[b] = reg.tgt(p);
  }
  alg->gens = q.arrows;
  alg->gen_basis.assign(q.arrows.size(), -1);
  for (int g = 0; g < (int)q.arrows.size(); ++g) {
    Path ap{q.arrows[g].source, {g}};
    auto it = reg.index.find({ap.source, ap.arrows});
    Vec elem = Vec::Zero(alg->dim);
    if (it != reg.index.end()) {
      SparseRow nf = ideal.reduce({{it->second, Rational(1)}});
      for (const auto& [pid, c] : nf) elem(path_to_basis.at(pid)) += c;
      auto bit = path_to_basis.find(it->second);
      if (bit != path_to_basis.end()) alg->gen_basis[g] = bit->second;
    }
    alg->gen_elem.push_back(elem);
  }

  // multiplication by concatenation + normal form
  alg->mult_table = Mat::Zero(alg->dim * alg->dim, alg->dim);
  for (int i = 0; i < alg->dim; ++i) {
    const Path& pi = reg.paths[basis_paths[i]];
    for (int j = 0; j < alg->dim; ++j) {
      const Path& pj = reg.paths[basis_paths[j]];
      if (reg.tgt(pj) != pi.source) continue;  // apply j first, then i
      Path cat;
      cat.source = pj.source;
      cat.arrows = pj.arrows;
      cat.arrows.insert(cat.arrows.end(), pi.arrows.begin(), pi.arrows.end());
      if (cat.length() >= cutoff) continue;  // lies in the ideal
      reg.extend_to(cat.length());
      SparseRow nf = ideal.reduce({{reg.add(cat), Rational(1)}});
      for (const auto& [pid, c] : nf) alg->mult_table(i * alg->dim + j, path_to_basis.at(pid)) += c;
    }
  }

  // expressions: each basis path is its own word
  alg->expr.resize(alg->dim);
  for (int b = 0; b < alg->dim; ++b) {
    const Path& p = reg.paths[basis_paths[b]];
    alg->expr[b].push_back({Rational(1), p.source, p.arrows});
  }

  for (int b = alg->verts; b < alg->dim; ++b) alg->radical_basis.push_back(b);
  alg->rad_nilpotency = 1;
  for (int b = 0; b < alg->dim; ++b)
    alg->rad_nilpotency = std::max(alg->rad_nilpotency, reg.paths[basis_paths[b]].length() + 1);
  alg->hereditary = relations.empty() && q.is_acyclic() && !q.has_loops();
  alg->presentation = QuiverPresentation{q, relations};
  return alg;
}

// ---------------------------------------------------------------------------
// abstract algebra from structure constants
// ---------------------------------------------------------------------------

namespace {

struct RawAlgebra {
  int dim;
  const Mat& mult;
  Vec multiply(const Vec& a, const Vec& b) const {
    Vec out = Vec::Zero(dim);
    for (int i = 0; i < dim; ++i) {
      if (a(i).is_zero()) continue;
      for (int j = 0; j < dim; ++j) {
        if (b(j).is_zero()) continue;
        out += mult.row(i * dim + j).transpose() * (a(i) * b(j));
      }
    }
    return out;
  }
  Mat left_mult_matrix(const Vec& a) const {
    Mat m(dim, dim);
    Vec e = Vec::Zero(dim);
    for (int j = 0; j < dim; ++j) {
      e(j) = Rational(1);
      m.col(j) = multiply(a, e);
      e(j) = Rational(0);
    }
    return m;
  }
};

}  // namespace

Algebra::Ptr algebra_from_structure(const std::string& id, int dim, const Mat& mult,
                                    const std::vector<Vec>& idempotents,
                                    const std::vector<GeneratorSpec>& generators,
                                    Mat* new_basis_in_old) {
  if (mult.rows() != (Eigen::Index)dim * dim || mult.cols() != dim)
    throw std::invalid_argument("algebra_from_structure: bad multiplication shape");
  RawAlgebra raw{dim, mult};
  const int n = (int)idempotents.size();

  // orthogonality and completeness
  Vec unit = Vec::Zero(dim);
  for (const auto& e : idempotents) unit += e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec p = raw.multiply(idempotents[i], idempotents[j]);
      Vec expect = (i == j) ? idempotents[i] : Vec(Vec::Zero(dim));
      if (!vec_eq(p, expect))
        throw std::invalid_argument("algebra_from_structure: idempotents not orthogonal");
    }
  for (int b = 0; b < dim; ++b) {
    Vec e = Vec::Zero(dim);
    e(b) = Rational(1);
    if (!vec_eq(raw.multiply(unit, e), e) || !vec_eq(raw.multiply(e, unit), e))
      throw std::invalid_argument("algebra_from_structure: idempotents do not sum to the unit");
  }

  // Peirce blocks e_t A e_s in the old coordinates
  auto sandwich = [&](int t, int s, const Vec& x) { return raw.multiply(idempotents[t], raw.multiply(x, idempotents[s])); };
  std::vector<Vec> new_basis;        // old coordinates
  std::vector<int> src_of, tgt_of;
  // diagonal blocks first: e_v, then the radical part of e_v A e_v
  // radical via the trace form of the left regular representation (char 0)
  std::vector<Mat> lmat;
  for (int b = 0; b < dim; ++b) {
    Vec e = Vec::Zero(dim);
    e(b) = Rational(1);
    lmat.push_back(raw.left_mult_matrix(e));
  }
  Mat gram(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Mat prod = lmat[i] * lmat[j];
      Rational tr(0);
      for (int k = 0; k < dim; ++k) tr += prod(k, k);
      gram(i, j) = tr;
    }
  Mat rad_space = kernel_basis(gram);  // columns span rad(A) in old coords

  auto block_of = [&](int t, int s, const Mat& cols) {
    std::vector<Vec> vecs;
    for (Eigen::Index c = 0; c < cols.cols(); ++c) vecs.push_back(sandwich(t, s, Vec(cols.col(c))));
    Mat m(dim, (Eigen::Index)vecs.size());
    for (std::size_t k = 0; k < vecs.size(); ++k) m.col((Eigen::Index)k) = vecs[k];
    return column_space_basis(m);
  };
  Mat all_cols = Mat::Identity(dim, dim);
  for (int v = 0; v < n; ++v) {
    new_basis.push_back(idempotents[v]);
    src_of.push_back(v);
    tgt_of.push_back(v);
  }
  std::vector<std::pair<int, Vec>> radical_elems;  // (position in new basis, element)
  for (int v = 0; v < n; ++v) {
    Mat diag_rad = block_of(v, v, rad_space);
    Mat full_diag = block_of(v, v, all_cols);
    if (full_diag.cols() != diag_rad.cols() + 1)
      throw std::invalid_argument("algebra_from_structure: idempotent " + std::to_string(v) + " is not primitive (or algebra not basic)");
    for (Eigen::Index c = 0; c < diag_rad.cols(); ++c) {
      new_basis.push_back(Vec(diag_rad.col(c)));
      src_of.push_back(v);
      tgt_of.push_back(v);
    }
  }
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      Mat block = block_of(t, s, all_cols);
      Mat block_rad = block_of(t, s, rad_space);
      if (block.cols() != block_rad.cols())
        throw std::invalid_argument("algebra_from_structure: off-diagonal block not radical; algebra is not basic");
      for (Eigen::Index c = 0; c < block.cols(); ++c) {
        new_basis.push_back(Vec(block.col(c)));
        src_of.push_back(s);
        tgt_of.push_back(t);
      }
    }
  if ((int)new_basis.size() != dim)
    throw std::invalid_argument("algebra_from_structure: Peirce decomposition does not exhaust the algebra");

  Mat change(dim, dim);  // columns = new basis in old coords
  for (int b = 0; b < dim; ++b) change.col(b) = new_basis[b];
  Mat change_inv = inverse(change);
  if (new_basis_in_old) *new_basis_in_old = change;

  auto alg = std::make_shared<Algebra>();
  alg->id = id;
  alg->verts = n;
  alg->dim = dim;
  alg->basis_src = src_of;
  alg->basis_tgt = tgt_of;
  alg->mult_table = Mat::Zero(dim * dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (src_of[i] != tgt_of[j]) continue;
      Vec p = raw.multiply(new_basis[i], new_basis[j]);
      alg->mult_table.row(i * dim + j) = (change_inv * p).transpose();
    }
  for (int b = n; b < dim; ++b) alg->radical_basis.push_back(b);

  // radical nilpotency
  {
    Mat power(dim, (Eigen::Index)alg->radical_basis.size());
    for (std::size_t k = 0; k < alg->radical_basis.size(); ++k) power.col((Eigen::Index)k) = alg->basis_vec(alg->radical_basis[k]);
    alg->rad_nilpotency = 1;
    while (power.cols() > 0) {
      ++alg->rad_nilpotency;
      std::vector<Vec> prods;
      for (Eigen::Index c = 0; c < power.cols(); ++c)
        for (int r : alg->radical_basis) prods.push_back(alg->multiply(alg->basis_vec(r), Vec(power.col(c))));
      Mat span(dim, (Eigen::Index)prods.size());
      for (std::size_t k = 0; k < prods.size(); ++k) span.col((Eigen::Index)k) = prods[k];
      power = column_space_basis(span);
      if (alg->rad_nilpotency > dim + 1) throw std::invalid_argument("algebra_from_structure: radical not nilpotent");
    }
  }

  // generators: supplied, or a lift of rad/rad^2 block by block
  if (!generators.empty()) {
    for (const auto& g : generators) {
      Vec elem = change_inv * g.element;
      alg->gens.push_back({g.name, g.source, g.target});
      alg->gen_elem.push_back(elem);
    }
  } else {
    // rad^2 span in new coordinates
    std::vector<Vec> sq;
    for (int i : alg->radical_basis)
      for (int j : alg->radical_basis) sq.push_back(alg->mult_basis(i, j));
    Mat rad2(dim, (Eigen::Index)sq.size());
    for (std::size_t k = 0; k < sq.size(); ++k) rad2.col((Eigen::Index)k) = sq[k];
    Mat span = column_space_basis(rad2);
    int counter = 0;
    for (int b : alg->radical_basis) {
      Mat trial = hstack(span, Mat(alg->basis_vec(b)));
      if (rank(trial) > rank(span)) {
        span = trial;
        alg->gens.push_back({"g" + std::to_string(++counter), alg->basis_src[b], alg->basis_tgt[b]});
        alg->gen_elem.push_back(alg->basis_vec(b));
      }
    }
  }
  alg->gen_basis.assign(alg->gens.size(), -1);
  for (std::size_t g = 0; g < alg->gens.size(); ++g) {
    // mark generators that coincide with a basis element
    for (int b = 0; b < dim; ++b)
      if (vec_eq(Vec(alg->gen_elem[g]), Vec(alg->basis_vec(b)))) { alg->gen_basis[g] = b; break; }
  }

  // expressions of basis elements as words in the generators (BFS by length)
  {
    std::vector<std::pair<std::vector<int>, Vec>> words;  // (word, element)
    std::vector<int> word_src;
    Mat span(dim, 0);
    auto try_add = [&](std::vector<int> w, int src, const Vec& elem) {
      Mat trial = hstack(span, Mat(elem));
      if (rank(trial) > rank(span)) {
        span = trial;
        words.emplace_back(std::move(w), elem);
        word_src.push_back(src);
        return true;
      }
      return false;
    };
    std::vector<std::size_t> frontier;
    for (int v = 0; v < n; ++v)
      if (try_add({}, v, alg->basis_vec(v))) frontier.push_back(words.size() - 1);
    while (rank(span) < dim) {
      std::vector<std::size_t> next;
      for (std::size_t wi : frontier) {
        auto word = words[wi].first;
        const Vec elem = words[wi].second;
        int wtgt = word.empty() ? word_src[wi] : alg->gens[word.back()].target;
        for (std::size_t g = 0; g < alg->gens.size(); ++g) {
          if (alg->gens[g].source != wtgt) continue;
          std::vector<int> nw = word;
          nw.push_back((int)g);
          Vec ne = alg->multiply(alg->gen_elem[g], elem);
          if (is_zero_mat(Mat(ne))) continue;
          if (try_add(std::move(nw), word_src[wi], ne)) next.push_back(words.size() - 1);
        }
      }
      if (next.empty())
        throw std::invalid_argument("algebra_from_structure: generators do not generate the algebra");
      frontier = std::move(next);
    }
    Mat cols(dim, (Eigen::Index)words.size());
    for (std::size_t k = 0; k < words.size(); ++k) cols.col((Eigen::Index)k) = words[k].second;
    alg->expr.resize(dim);
    for (int b = 0; b < dim; ++b) {
      auto sol = solve_one(cols, Vec(alg->basis_vec(b)));
      if (!sol) throw std::logic_error("algebra_from_structure: basis expression solve failed");
      for (std::size_t k = 0; k < words.size(); ++k)
        if (!(*sol)((Eigen::Index)k).is_zero())
          alg->expr[b].push_back({(*sol)((Eigen::Index)k), word_src[k], words[k].first});
    }
  }

  alg->hereditary = false;
  return alg;
}

// ---------------------------------------------------------------------------
// tensor algebra and Gabriel presentation
// ---------------------------------------------------------------------------

namespace {

Algebra::Ptr tensor_structure_route(const std::string& id, const LocalCoefficientAlgebra& r,
                                    const Quiver& q) {
  Algebra::Ptr kq = path_algebra(id + ":kQ", q, {});
  const int d = r.dim(), m = kq->dim;
  const int dim = d * m;
  auto idx = [&](int alpha, int p) { return alpha * m + p; };
  Mat mult = Mat::Zero(dim * dim, dim);
  for (int a1 = 0; a1 < d; ++a1)
    for (int p1 = 0; p1 < m; ++p1)
      for (int a2 = 0; a2 < d; ++a2)
        for (int p2 = 0; p2 < m; ++p2) {
          if (kq->basis_src[p1] != kq->basis_tgt[p2]) continue;
          Vec rc = r.multiply(r.basis_vec(a1), r.basis_vec(a2));
          Vec pc = kq->mult_basis(p1, p2);
          Eigen::Index row = (Eigen::Index)idx(a1, p1) * dim + idx(a2, p2);
          for (int b = 0; b < d; ++b) {
            if (rc(b).is_zero()) continue;
            for (int c = 0; c < m; ++c) {
              if (pc(c).is_zero()) continue;
              mult(row, idx(b, c)) += rc(b) * pc(c);
            }
          }
        }
  std::vector<Vec> idems;
  for (int v = 0; v < q.vertices; ++v) {
    Vec e = Vec::Zero(dim);
    e(idx(0, v)) = Rational(1);
    idems.push_back(e);
  }
  std::vector<GeneratorSpec> gens;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    GeneratorSpec g;
    g.name = q.arrows[a].name;
    g.source = q.arrows[a].source;
    g.target = q.arrows[a].target;
    g.element = Vec::Zero(dim);
    g.element(idx(0, kq->gen_basis[(int)a])) = Rational(1);
    gens.push_back(std::move(g));
  }
  for (int rg : r.radical_generators())
    for (int v = 0; v < q.vertices; ++v) {
      GeneratorSpec g;
      g.name = r.labels()[rg] + std::to_string(v + 1);
      g.source = v;
      g.target = v;
      g.element = Vec::Zero(dim);
      g.element(idx(rg, v)) = Rational(1);
      gens.push_back(std::move(g));
    }
  return algebra_from_structure(id, dim, mult, idems, gens);
}

}  // namespace

Algebra::Ptr tensor_algebra(const std::string& id, const LocalCoefficientAlgebra& r, const Quiver& q) {
  if (q.has_loops() || !q.is_acyclic())
    throw std::invalid_argument("tensor_algebra: quiver must be acyclic with no loops");
  if (r.dim() == 1) return path_algebra(id, q, {});
  if (r.truncation() >= 2) {
    const int t = r.truncation();
    Quiver ql = q;
    std::vector<int> loop_idx;
    for (int v = 0; v < q.vertices; ++v) {
      loop_idx.push_back((int)ql.arrows.size());
      ql.arrows.push_back({"x" + std::to_string(v + 1), v, v});
    }
    std::vector<PathRelation> rels;
    for (int v = 0; v < q.vertices; ++v) {
      Path p{v, std::vector<int>((std::size_t)t, loop_idx[v])};
      rels.push_back({{Rational(1), p}});
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      const auto& ar = q.arrows[a];
      Path left{ar.source, {loop_idx[ar.source], (int)a}};   // a . x_s
      Path right{ar.source, {(int)a, loop_idx[ar.target]}};  // x_t . a
      rels.push_back({{Rational(1), left}, {Rational(-1), right}});
    }
    Algebra::Ptr by_presentation = path_algebra(id, ql, rels);
    Algebra::Ptr by_structure = tensor_structure_route(id, r, q);
    if (by_presentation->dim != by_structure->dim ||
        by_presentation->radical_series_dims() != by_structure->radical_series_dims() ||
        !mat_eq(by_presentation->cartan_matrix(), by_structure->cartan_matrix()))
      throw std::logic_error("tensor_algebra: presentation and structure-constant routes disagree");
    return by_presentation;
  }
  return tensor_structure_route(id, r, q);
}

QuiverPresentation basic_presentation(const Algebra& a) {
  QuiverPresentation out;
  out.quiver.vertices = a.verts;
  for (const auto& g : a.gens) out.quiver.arrows.push_back(g);

  // kernel of the truncated surjection: paths of length <= rad nilpotency
  PathRegistry reg(out.quiver);
  reg.extend_to(a.rad_nilpotency);
  auto eval_path = [&](const Path& p) {
    Vec v = Vec::Zero(a.dim);
    v(p.source) = Rational(1);  // e_source
    for (int g : p.arrows) v = a.multiply(a.gen_elem[g], v);
    return v;
  };
  // per endpoint block: kernel basis over paths in that block, skipping the
  // trivial paths (the ideal is admissible so relations live in length >= 2)
  for (int s = 0; s < a.verts; ++s)
    for (int t = 0; t < a.verts; ++t) {
      std::vector<int> block_paths;
      for (std::size_t pid = 0; pid < reg.paths.size(); ++pid) {
        const Path& p = reg.paths[pid];
        if (p.source == s && reg.tgt(p) == t && p.length() >= 1) block_paths.push_back((int)pid);
      }
      std::sort(block_paths.begin(), block_paths.end(), [&](int x, int y) {
        const Path& px = reg.paths[x];
        const Path& py = reg.paths[y];
        if (px.length() != py.length()) return px.length() < py.length();
        return px.arrows < py.arrows;
      });
      if (block_paths.empty()) continue;
      Mat cols(a.dim, (Eigen::Index)block_paths.size());
      for (std::size_t k = 0; k < block_paths.size(); ++k) cols.col((Eigen::Index)k) = eval_path(reg.paths[block_paths[k]]);
      Mat ker = kernel_basis(cols);
      for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        PathRelation rel;
        for (std::size_t k = 0; k < block_paths.size(); ++k)
          if (!ker((Eigen::Index)k, c).is_zero()) rel.push_back({ker((Eigen::Index)k, c), reg.paths[block_paths[k]]});
        if (!rel.empty()) out.relations.push_back(std::move(rel));
      }
    }
  return out;
}

}  // namespace tauseq
