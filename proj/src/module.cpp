#include "tauseq/module.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tauseq {

int Module::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

std::vector<long> Module::dim_vector() const {
  std::vector<long> v;
  for (int d : dims) v.push_back(d);
  return v;
}

std::string Module::content_key() const {
  std::ostringstream os;
  os << "d";
  for (int d : dims) os << ":" << d;
  for (std::size_t g = 0; g < act.size(); ++g) {
    os << "|g" << g;
    const Mat& m = act[g];
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) os << "," << m(i, j).str();
  }
  return os.str();
}

bool Morphism::is_zero() const {
  for (const auto& c : comp)
    if (!is_zero_mat(c)) return false;
  return true;
}

bool Morphism::is_iso() const {
  for (std::size_t v = 0; v < comp.size(); ++v) {
    if (comp[v].rows() != comp[v].cols()) return false;
    if (comp[v].rows() > 0 && !is_invertible(comp[v])) return false;
  }
  return true;
}

bool module_eq(const Module& a, const Module& b) {
  if (a.alg != b.alg || a.dims != b.dims) return false;
  for (std::size_t g = 0; g < a.act.size(); ++g)
    if (!mat_eq(a.act[g], b.act[g])) return false;
  return true;
}

Module zero_module(Algebra::Ptr alg) {
  Module m;
  m.alg = alg;
  m.dims.assign(alg->verts, 0);
  for (const auto& g : alg->gens) {
    (void)g;
    m.act.emplace_back(Mat::Zero(0, 0));
  }
  return m;
}

Module simple_module(Algebra::Ptr alg, int v) {
  Module m;
  m.alg = alg;
  m.dims.assign(alg->verts, 0);
  m.dims[v] = 1;
  for (const auto& g : alg->gens)
    m.act.emplace_back(Mat::Zero(g.target == v ? 1 : 0, g.source == v ? 1 : 0));
  return m;
}

Module projective_module(Algebra::Ptr alg, int v) {
  Module m;
  m.alg = alg;
  m.dims.resize(alg->verts);
  std::vector<std::vector<int>> blocks(alg->verts);
  for (int u = 0; u < alg->verts; ++u) {
    blocks[u] = alg->block_basis(v, u);
    m.dims[u] = (int)blocks[u].size();
  }
  for (std::size_t g = 0; g < alg->gens.size(); ++g) {
    int s = alg->gens[g].source, t = alg->gens[g].target;
    Mat a = Mat::Zero(m.dims[t], m.dims[s]);
    for (int col = 0; col < m.dims[s]; ++col) {
      Vec prod = alg->multiply(alg->gen_elem[g], alg->basis_vec(blocks[s][col]));
      for (int row = 0; row < m.dims[t]; ++row) a(row, col) = prod(blocks[t][row]);
    }
    m.act.push_back(std::move(a));
  }
  return m;
}

Module dual_module(const Module& m) {
  Module d;
  d.alg = m.alg->opposite();
  d.dims = m.dims;
  for (const auto& a : m.act) d.act.emplace_back(a.transpose());
  return d;
}

Module injective_module(Algebra::Ptr alg, int v) {
  return dual_module(projective_module(alg->opposite(), v));
}

void validate_module(const Module& m) {
  const Algebra& a = *m.alg;
  if ((int)m.dims.size() != a.verts || m.act.size() != a.gens.size())
    throw std::invalid_argument("module: shape mismatch with algebra");
  for (std::size_t g = 0; g < a.gens.size(); ++g)
    if (m.act[g].rows() != m.dims[a.gens[g].target] || m.act[g].cols() != m.dims[a.gens[g].source])
      throw std::invalid_argument("module: action matrix shape mismatch");
  // full structure-constant consistency through the basis expressions
  std::vector<Mat> acts(a.dim);
  for (int b = 0; b < a.dim; ++b) acts[b] = basis_action(m, b);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      if (a.basis_src[i] != a.basis_tgt[j]) continue;
      Mat lhs = acts[i] * acts[j];
      Vec coords = a.mult_basis(i, j);
      Mat rhs = Mat::Zero(m.dims[a.basis_tgt[i]], m.dims[a.basis_src[j]]);
      for (int k = 0; k < a.dim; ++k)
        if (!coords(k).is_zero()) rhs += acts[k] * coords(k);
      if (!mat_eq(lhs, rhs)) throw std::invalid_argument("module: defining relations violated");
    }
}

Mat basis_action(const Module& m, int b) {
  const Algebra& a = *m.alg;
  Mat out = Mat::Zero(m.dims[a.basis_tgt[b]], m.dims[a.basis_src[b]]);
  for (const auto& term : a.expr[b]) {
    Mat w = Mat::Identity(m.dims[term.source], m.dims[term.source]);
    for (int g : term.word) w = m.act[g] * w;
    out += w * term.coeff;
  }
  return out;
}

Mat element_action_total(const Module& m, const Vec& elem) {
  const Algebra& a = *m.alg;
  const int total = m.total_dim();
  std::vector<int> off(a.verts, 0);
  for (int v = 1; v < a.verts; ++v) off[v] = off[v - 1] + m.dims[v - 1];
  Mat out = Mat::Zero(total, total);
  for (int b = 0; b < a.dim; ++b) {
    if (elem(b).is_zero()) continue;
    Mat ab = basis_action(m, b);
    out.block(off[a.basis_tgt[b]], off[a.basis_src[b]], ab.rows(), ab.cols()) += ab * elem(b);
  }
  return out;
}

Morphism identity_morphism(const Module& m) {
  Morphism f{m, m, {}};
  for (int d : m.dims) f.comp.emplace_back(Mat::Identity(d, d));
  return f;
}

Morphism zero_morphism(const Module& src, const Module& tgt) {
  Morphism f{src, tgt, {}};
  for (std::size_t v = 0; v < src.dims.size(); ++v) f.comp.emplace_back(Mat::Zero(tgt.dims[v], src.dims[v]));
  return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism h{f.src, g.tgt, {}};
  for (std::size_t v = 0; v < f.comp.size(); ++v) h.comp.emplace_back(g.comp[v] * f.comp[v]);
  return h;
}

Morphism add(const Morphism& f, const Morphism& g) {
  Morphism h = f;
  for (std::size_t v = 0; v < f.comp.size(); ++v) h.comp[v] += g.comp[v];
  return h;
}

Morphism scale(const Rational& c, const Morphism& f) {
  Morphism h = f;
  for (auto& m : h.comp) m *= c;
  return h;
}

bool is_module_morphism(const Morphism& f) {
  const Algebra& a = *f.src.alg;
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    int s = a.gens[g].source, t = a.gens[g].target;
    if (!mat_eq(Mat(f.comp[t] * f.src.act[g]), Mat(f.tgt.act[g] * f.comp[s]))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// hom spaces (memoized per algebra)
// ---------------------------------------------------------------------------

namespace {

struct AlgebraMemo {
  Algebra::Ptr keepalive;
  std::mutex mu;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<Morphism>>> hom;
};

AlgebraMemo& memo_for(const Algebra::Ptr& a) {
  static std::mutex registry_mu;
  static std::map<const Algebra*, std::unique_ptr<AlgebraMemo>> registry;
  std::lock_guard<std::mutex> lock(registry_mu);
  auto& slot = registry[a.get()];
  if (!slot) {
    slot = std::make_unique<AlgebraMemo>();
    slot->keepalive = a;
  }
  return *slot;
}

std::vector<Morphism> compute_hom(const Module& m, const Module& n) {
  const Algebra& a = *m.alg;
  const int verts = a.verts;
  std::vector<Eigen::Index> off(verts + 1, 0);
  for (int v = 0; v < verts; ++v) off[v + 1] = off[v] + (Eigen::Index)n.dims[v] * m.dims[v];
  Mat ker = kernel_basis(hom_system(m, n));
  std::vector<Morphism> basis;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    Morphism f{m, n, {}};
    for (int v = 0; v < verts; ++v)
      f.comp.push_back(unvectorize(Vec(ker.col(c).segment(off[v], (Eigen::Index)n.dims[v] * m.dims[v])), n.dims[v], m.dims[v]));
    basis.push_back(std::move(f));
  }
  return basis;
}

}  // namespace

Mat hom_system(const Module& m, const Module& n) {
  const Algebra& a = *m.alg;
  const int verts = a.verts;
  std::vector<Eigen::Index> off(verts + 1, 0);
  for (int v = 0; v < verts; ++v) off[v + 1] = off[v] + (Eigen::Index)n.dims[v] * m.dims[v];
  const Eigen::Index unknowns = off[verts];
  Eigen::Index rows = 0;
  for (std::size_t g = 0; g < a.gens.size(); ++g)
    rows += (Eigen::Index)n.dims[a.gens[g].target] * m.dims[a.gens[g].source];
  Mat sys = Mat::Zero(rows, unknowns);
  Eigen::Index at = 0;
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    const int s = a.gens[g].source, t = a.gens[g].target;
    const Eigen::Index blk = (Eigen::Index)n.dims[t] * m.dims[s];
    if (blk == 0) continue;
    // F_t A_g - B_g F_s = 0, vectorized columnwise
    Mat left = kronecker(Mat(m.act[g].transpose()), Mat(Mat::Identity(n.dims[t], n.dims[t])));
    Mat right = kronecker(Mat(Mat::Identity(m.dims[s], m.dims[s])), n.act[g]);
    sys.block(at, off[t], blk, (Eigen::Index)n.dims[t] * m.dims[t]) += left;
    sys.block(at, off[s], blk, (Eigen::Index)n.dims[s] * m.dims[s]) -= right;
    at += blk;
  }
  return sys;
}

std::vector<Morphism> hom_space(const Module& m, const Module& n) {
  if (m.alg != n.alg) throw std::invalid_argument("hom_space: modules over different algebras");
  auto& memo = memo_for(m.alg);
  const std::string key = m.content_key() + "->" + n.content_key();
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.hom.find(key);
    if (it != memo.hom.end()) return *it->second;
  }
  auto result = std::make_shared<const std::vector<Morphism>>(compute_hom(m, n));
  std::lock_guard<std::mutex> lock(memo.mu);
  auto [it, inserted] = memo.hom.emplace(key, result);
  return *it->second;
}

int hom_dim(const Module& m, const Module& n) { return (int)hom_space(m, n).size(); }

// ---------------------------------------------------------------------------
// submodules, quotients, kernels, sums
// ---------------------------------------------------------------------------

namespace {

struct QuotientBasis {
  Mat span;      // canonical basis of the subspace (columns)
  Mat proj;      // quotient projection (complement coordinates)
  Mat section;   // standard-vector section of proj
};

QuotientBasis quotient_basis(const Mat& raw_span, int dim) {
  QuotientBasis out;
  out.span = column_space_basis(raw_span);
  const Eigen::Index r = out.span.cols();
  // complete by standard vectors: pivots of rref([span | I]) beyond the span
  Mat aug = hstack(out.span, Mat(Mat::Identity(dim, dim)));
  auto pivots = rref_in_place(aug);
  std::vector<Eigen::Index> complement;
  for (auto p : pivots)
    if (p >= r) complement.push_back(p - r);
  Mat full(dim, dim);
  full.leftCols(r) = out.span;
  out.section = Mat::Zero(dim, (Eigen::Index)complement.size());
  for (std::size_t k = 0; k < complement.size(); ++k) {
    full.col(r + (Eigen::Index)k) = Mat::Identity(dim, dim).col(complement[k]);
    out.section.col((Eigen::Index)k) = full.col(r + (Eigen::Index)k);
  }
  Mat inv = inverse(full);
  out.proj = inv.bottomRows(dim - r);
  return out;
}

Module module_on_span(const Module& m, const std::vector<Mat>& span, std::vector<Mat>& basis_out) {
  Module s;
  s.alg = m.alg;
  s.dims.resize(m.dims.size());
  basis_out.resize(m.dims.size());
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    basis_out[v] = column_space_basis(span[v]);
    s.dims[v] = (int)basis_out[v].cols();
  }
  const Algebra& a = *m.alg;
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    int sv = a.gens[g].source, tv = a.gens[g].target;
    Mat moved = m.act[g] * basis_out[sv];
    auto sol = solve_matrix(basis_out[tv], moved);
    if (!sol) throw std::logic_error("module_on_span: span is not invariant under the action");
    s.act.push_back(*sol);
  }
  return s;
}

}  // namespace

SubQuotient sub_quotient(const Module& m, const std::vector<Mat>& span) {
  SubQuotient out;
  std::vector<Mat> basis;
  out.sub = module_on_span(m, span, basis);
  out.incl = Morphism{out.sub, m, basis};

  std::vector<QuotientBasis> qb;
  for (std::size_t v = 0; v < m.dims.size(); ++v) qb.push_back(quotient_basis(basis[v], m.dims[v]));
  out.quot.alg = m.alg;
  out.quot.dims.resize(m.dims.size());
  for (std::size_t v = 0; v < m.dims.size(); ++v) out.quot.dims[v] = (int)qb[v].proj.rows();
  const Algebra& a = *m.alg;
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    int sv = a.gens[g].source, tv = a.gens[g].target;
    out.quot.act.push_back(Mat(qb[tv].proj * m.act[g] * qb[sv].section));
  }
  Morphism proj{m, out.quot, {}};
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    proj.comp.push_back(qb[v].proj);
    out.section.push_back(qb[v].section);
  }
  out.proj = std::move(proj);
  return out;
}

KernelImage kernel_image(const Morphism& f) {
  KernelImage out;
  std::vector<Mat> kerspan, imspan;
  for (std::size_t v = 0; v < f.comp.size(); ++v) {
    kerspan.push_back(kernel_basis(f.comp[v]));
    imspan.push_back(column_space_basis(f.comp[v]));
  }
  std::vector<Mat> kbasis;
  out.kernel = module_on_span(f.src, kerspan, kbasis);
  out.kernel_incl = Morphism{out.kernel, f.src, kbasis};

  std::vector<Mat> ibasis;
  out.image = module_on_span(f.tgt, imspan, ibasis);
  out.image_incl = Morphism{out.image, f.tgt, ibasis};
  Morphism onto{f.src, out.image, {}};
  for (std::size_t v = 0; v < f.comp.size(); ++v) {
    auto sol = solve_matrix(ibasis[v], f.comp[v]);
    if (!sol) throw std::logic_error("kernel_image: image factorization failed");
    onto.comp.push_back(*sol);
  }
  out.onto_image = std::move(onto);

  auto sq = sub_quotient(f.tgt, imspan);
  out.cokernel = sq.quot;
  out.coker_proj = sq.proj;
  return out;
}

DirectSum direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty part list");
  DirectSum out;
  const Algebra& a = *parts[0].alg;
  out.mod.alg = parts[0].alg;
  out.mod.dims.assign(a.verts, 0);
  std::vector<std::vector<int>> off(parts.size(), std::vector<int>(a.verts, 0));
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int v = 0; v < a.verts; ++v) {
      off[p][v] = out.mod.dims[v];
      out.mod.dims[v] += parts[p].dims[v];
    }
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    int sv = a.gens[g].source, tv = a.gens[g].target;
    Mat m = Mat::Zero(out.mod.dims[tv], out.mod.dims[sv]);
    for (std::size_t p = 0; p < parts.size(); ++p)
      m.block(off[p][tv], off[p][sv], parts[p].dims[tv], parts[p].dims[sv]) = parts[p].act[g];
    out.mod.act.push_back(std::move(m));
  }
  for (std::size_t p = 0; p < parts.size(); ++p) {
    Morphism in{parts[p], out.mod, {}}, pr{out.mod, parts[p], {}};
    for (int v = 0; v < a.verts; ++v) {
      Mat i = Mat::Zero(out.mod.dims[v], parts[p].dims[v]);
      i.block(off[p][v], 0, parts[p].dims[v], parts[p].dims[v]) = Mat::Identity(parts[p].dims[v], parts[p].dims[v]);
      Mat q = Mat::Zero(parts[p].dims[v], out.mod.dims[v]);
      q.block(0, off[p][v], parts[p].dims[v], parts[p].dims[v]) = Mat::Identity(parts[p].dims[v], parts[p].dims[v]);
      in.comp.push_back(std::move(i));
      pr.comp.push_back(std::move(q));
    }
    out.incl.push_back(std::move(in));
    out.proj.push_back(std::move(pr));
  }
  return out;
}

Morphism from_projective(const Module& proj_v, int v, const Module& m, const Vec& value) {
  const Algebra& a = *m.alg;
  Morphism f{proj_v, m, {}};
  for (int u = 0; u < a.verts; ++u) {
    auto block = a.block_basis(v, u);
    Mat comp(m.dims[u], (Eigen::Index)block.size());
    for (std::size_t k = 0; k < block.size(); ++k) comp.col((Eigen::Index)k) = basis_action(m, block[k]) * value;
    f.comp.push_back(std::move(comp));
  }
  return f;
}

Module radical_submodule_span(const Module& m, std::vector<Mat>& span_out) {
  const Algebra& a = *m.alg;
  span_out.assign(a.verts, Mat());
  std::vector<std::vector<Mat>> pieces(a.verts);
  for (int b : a.radical_basis) pieces[a.basis_tgt[b]].push_back(basis_action(m, b));
  for (int v = 0; v < a.verts; ++v) {
    Eigen::Index cols = 0;
    for (const auto& p : pieces[v]) cols += p.cols();
    Mat stacked(m.dims[v], cols);
    Eigen::Index at = 0;
    for (const auto& p : pieces[v]) {
      stacked.middleCols(at, p.cols()) = p;
      at += p.cols();
    }
    span_out[v] = column_space_basis(stacked);
  }
  std::vector<Mat> dummy;
  return module_on_span(m, span_out, dummy);
}

SubQuotient radical_and_top(const Module& m) {
  std::vector<Mat> span;
  radical_submodule_span(m, span);
  return sub_quotient(m, span);
}

// ---------------------------------------------------------------------------
// indecomposability, decomposition, isomorphism
// ---------------------------------------------------------------------------

namespace {

Rational total_trace(const Morphism& f) {
  Rational t(0);
  for (const auto& c : f.comp)
    for (Eigen::Index i = 0; i < std::min(c.rows(), c.cols()); ++i) t += c(i, i);
  return t;
}

/// Deterministic sweep: single basis elements, then sums of two and three
/// with coefficients from {1, -1, 2}.
void sweep_combinations(const std::vector<Morphism>& basis,
                        const std::function<bool(const Morphism&)>& visit) {
  static const Rational coeffs[3] = {Rational(1), Rational(-1), Rational(2)};
  const std::size_t h = basis.size();
  for (std::size_t i = 0; i < h; ++i)
    if (visit(basis[i])) return;
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i + 1; j < h; ++j)
      for (const auto& ci : coeffs)
        for (const auto& cj : coeffs)
          if (visit(add(scale(ci, basis[i]), scale(cj, basis[j])))) return;
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i + 1; j < h; ++j)
      for (std::size_t k = j + 1; k < h; ++k)
        for (const auto& ci : coeffs)
          for (const auto& cj : coeffs)
            for (const auto& ck : coeffs)
              if (visit(add(add(scale(ci, basis[i]), scale(cj, basis[j])), scale(ck, basis[k])))) return;
}

Morphism power(const Morphism& f, int n) {
  Morphism acc = f;
  for (int i = 1; i < n; ++i) acc = compose(f, acc);
  return acc;
}

}  // namespace

bool is_indecomposable(const Module& m) {
  if (m.is_zero()) throw std::invalid_argument("is_indecomposable: zero module");
  auto ends = hom_space(m, m);
  const int h = (int)ends.size();
  Mat gram(h, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) gram(i, j) = total_trace(compose(ends[i], ends[j]));
  return rank(gram) == 1;
}

std::vector<Summand> decompose(const Module& m) {
  std::vector<Summand> out;
  if (m.is_zero()) return out;
  if (is_indecomposable(m)) {
    out.push_back({m, identity_morphism(m), identity_morphism(m)});
    return out;
  }
  auto ends = hom_space(m, m);
  const int n = m.total_dim();
  std::optional<Morphism> splitter;
  sweep_combinations(ends, [&](const Morphism& f) {
    Morphism fn = power(f, n);
    int kdim = 0;
    for (const auto& c : fn.comp) kdim += (int)(c.cols() - rank(c));
    if (kdim == 0 || kdim == n) return false;
    splitter = fn;
    return true;
  });
  if (!splitter)
    throw std::runtime_error("decompose: Fitting sweep failed to split a decomposable module");

  auto ki = kernel_image(*splitter);
  // change of basis [kernel | image] per vertex
  std::vector<Mat> change, change_inv;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Mat both = hstack(ki.kernel_incl.comp[v], ki.image_incl.comp[v]);
    if (both.rows() != both.cols() || (both.rows() > 0 && !is_invertible(both)))
      throw std::logic_error("decompose: Fitting splitting is not a direct sum");
    change.push_back(both);
    change_inv.push_back(both.rows() > 0 ? inverse(both) : both);
  }
  Morphism proj_k{m, ki.kernel, {}}, proj_i{m, ki.image, {}};
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    const Eigen::Index kd = ki.kernel.dims[v];
    proj_k.comp.push_back(change_inv[v].topRows(kd));
    proj_i.comp.push_back(change_inv[v].bottomRows(m.dims[v] - kd));
  }
  for (const auto& piece : {std::make_pair(ki.kernel, std::make_pair(ki.kernel_incl, proj_k)),
                            std::make_pair(ki.image, std::make_pair(ki.image_incl, proj_i))}) {
    for (auto& s : decompose(piece.first)) {
      Summand lifted;
      lifted.part = s.part;
      lifted.incl = compose(piece.second.first, s.incl);
      lifted.proj = compose(s.proj, piece.second.second);
      out.push_back(std::move(lifted));
    }
  }
  return out;
}

namespace {
// between indecomposables a full hom basis cannot lie inside the radical,
// so a single basis element is invertible whenever the modules are isomorphic
std::optional<Morphism> iso_candidate_indec(const Module& m, const Module& n) {
  for (const auto& f : hom_space(m, n))
    if (f.is_iso()) return f;
  return std::nullopt;
}
}  // namespace

std::optional<Morphism> iso_witness(const Module& m, const Module& n) {
  if (m.alg != n.alg || m.dims != n.dims) return std::nullopt;
  if (m.is_zero()) return zero_morphism(m, n);
  auto homs = hom_space(m, n);
  std::optional<Morphism> found;
  sweep_combinations(homs, [&](const Morphism& f) {
    if (!f.is_iso()) return false;
    found = f;
    return true;
  });
  if (found) return found;
  // multiplicity-heavy case: match indecomposable summands pairwise
  auto dm = decompose(m);
  auto dn = decompose(n);
  if (dm.size() != dn.size()) return std::nullopt;
  std::vector<bool> used(dn.size(), false);
  Morphism assembled = zero_morphism(m, n);
  for (const auto& sm : dm) {
    bool matched = false;
    for (std::size_t j = 0; j < dn.size(); ++j) {
      if (used[j] || dn[j].part.dims != sm.part.dims) continue;
      auto piece = iso_candidate_indec(sm.part, dn[j].part);
      if (piece) {
        assembled = add(assembled, compose(dn[j].incl, compose(*piece, sm.proj)));
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (assembled.is_iso()) return assembled;
  return std::nullopt;
}

bool is_isomorphic(const Module& m, const Module& n) { return iso_witness(m, n).has_value(); }

// ---------------------------------------------------------------------------
// traces, generation, torsion functors
// ---------------------------------------------------------------------------

TraceData trace_in(const Module& m, const Module& x) {
  auto homs = hom_space(m, x);
  std::vector<Mat> span(x.dims.size());
  for (std::size_t v = 0; v < x.dims.size(); ++v) {
    Eigen::Index cols = 0;
    for (const auto& f : homs) cols += f.comp[v].cols();
    Mat stacked(x.dims[v], cols);
    Eigen::Index at = 0;
    for (const auto& f : homs) {
      stacked.middleCols(at, f.comp[v].cols()) = f.comp[v];
      at += f.comp[v].cols();
    }
    span[v] = stacked;
  }
  auto sq = sub_quotient(x, span);
  return TraceData{sq.sub, sq.incl, sq.quot, sq.proj};
}

bool gen_membership(const Module& x, const Module& m) {
  auto tr = trace_in(m, x);
  return tr.sub.dims == x.dims;
}

Module torsion_free_quotient(const Module& m, const Module& x) {
  Module cur = x;
  for (;;) {
    auto tr = trace_in(m, cur);
    if (tr.sub.total_dim() == 0) return cur;
    cur = tr.quot;
  }
}

Module reject_radical(const Module& x, const Module& s) {
  Module cur = x;
  for (;;) {
    auto homs = hom_space(cur, s);
    if (homs.empty()) return cur;
    std::vector<Mat> span(cur.dims.size());
    bool all_zero = true;
    for (std::size_t v = 0; v < cur.dims.size(); ++v) {
      Mat stacked((Eigen::Index)homs.size() * s.dims[v], cur.dims[v]);
      for (std::size_t k = 0; k < homs.size(); ++k) stacked.middleRows((Eigen::Index)k * s.dims[v], s.dims[v]) = homs[k].comp[v];
      span[v] = kernel_basis(stacked);
      if (span[v].cols() != cur.dims[v]) all_zero = false;
    }
    if (all_zero) return cur;  // every map already vanishes
    std::vector<Mat> dummy;
    Module next = module_on_span(cur, span, dummy);
    if (next.dims == cur.dims) return next;
    cur = next;
  }
}

}  // namespace tauseq
