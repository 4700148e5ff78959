#include "tauseq/homology.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace tauseq {

namespace {

struct HomologyMemo {
  Algebra::Ptr keepalive;
  std::mutex mu;
  std::unordered_map<std::string, std::shared_ptr<const ProjPresentation>> pres;
  std::unordered_map<std::string, std::shared_ptr<const Module>> tau;
};

HomologyMemo& memo_for(const Algebra::Ptr& a) {
  static std::mutex registry_mu;
  static std::map<const Algebra*, std::unique_ptr<HomologyMemo>> registry;
  std::lock_guard<std::mutex> lock(registry_mu);
  auto& slot = registry[a.get()];
  if (!slot) {
    slot = std::make_unique<HomologyMemo>();
    slot->keepalive = a;
  }
  return *slot;
}

struct Cover {
  std::vector<int> verts;
  std::vector<std::vector<int>> off;  // per part per vertex
  Module p;
  Morphism onto;  // p -> m, projective cover
};

Cover projective_cover(const Module& m) {
  const Algebra& a = *m.alg;
  Cover out;
  if (m.is_zero()) {
    out.p = zero_module(m.alg);
    out.onto = zero_morphism(out.p, m);
    return out;
  }
  auto rt = radical_and_top(m);
  // lifts of the top basis back into m
  std::vector<Module> parts;
  std::vector<Vec> values;
  std::vector<int> verts;
  for (int v = 0; v < a.verts; ++v) {
    const int t = rt.quot.dims[v];
    if (t == 0) continue;
    auto lift = solve_matrix(rt.proj.comp[v], Mat(Mat::Identity(t, t)));
    if (!lift) throw std::logic_error("projective_cover: top lift failed");
    for (int k = 0; k < t; ++k) {
      verts.push_back(v);
      values.push_back(Vec(lift->col(k)));
    }
  }
  std::vector<Module> projs;
  for (std::size_t k = 0; k < verts.size(); ++k) projs.push_back(projective_module(m.alg, verts[k]));
  auto ds = direct_sum(projs);
  Morphism onto = zero_morphism(ds.mod, m);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    Morphism comp = from_projective(projs[k], verts[k], m, values[k]);
    onto = add(onto, compose(comp, ds.proj[k]));
  }
  // offsets, rebuilt the same way direct_sum lays parts out
  std::vector<std::vector<int>> off(verts.size(), std::vector<int>(a.verts, 0));
  std::vector<int> at(a.verts, 0);
  for (std::size_t p = 0; p < verts.size(); ++p)
    for (int v = 0; v < a.verts; ++v) {
      off[p][v] = at[v];
      at[v] += projs[p].dims[v];
    }
  for (int v = 0; v < a.verts; ++v)
    if (rank(onto.comp[v]) != m.dims[v]) throw std::logic_error("projective_cover: cover not surjective");
  out.verts = std::move(verts);
  out.off = std::move(off);
  out.p = ds.mod;
  out.onto = std::move(onto);
  return out;
}

ProjPresentation compute_presentation(const Module& m) {
  ProjPresentation out;
  out.m = m;
  Cover c0 = projective_cover(m);
  out.p0_verts = c0.verts;
  out.p0_off = c0.off;
  out.p0 = c0.p;
  out.cover = c0.onto;
  auto ki = kernel_image(out.cover);
  out.ker = ki.kernel;
  out.ker_incl = ki.kernel_incl;
  Cover c1 = projective_cover(out.ker);
  out.p1_verts = c1.verts;
  out.p1_off = c1.off;
  out.p1 = c1.p;
  out.p1_onto_ker = c1.onto;
  out.d = compose(out.ker_incl, out.p1_onto_ker);
  return out;
}

}  // namespace

ProjPresentation min_proj_presentation(const Module& m) {
  auto& memo = memo_for(m.alg);
  const std::string key = m.content_key();
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.pres.find(key);
    if (it != memo.pres.end()) return *it->second;
  }
  auto result = std::make_shared<const ProjPresentation>(compute_presentation(m));
  std::lock_guard<std::mutex> lock(memo.mu);
  auto [it, inserted] = memo.pres.emplace(key, result);
  return *it->second;
}

std::vector<std::vector<Vec>> presentation_elements(const ProjPresentation& pres) {
  const Algebra& a = *pres.m.alg;
  std::vector<std::vector<Vec>> out(pres.p1_verts.size());
  for (std::size_t k = 0; k < pres.p1_verts.size(); ++k) {
    const int av = pres.p1_verts[k];
    const int slot = pres.p1_off[k][(std::size_t)av];  // idempotent slot of part k
    Vec column = pres.d.comp[(std::size_t)av].col(slot);
    for (std::size_t l = 0; l < pres.p0_verts.size(); ++l) {
      const int bv = pres.p0_verts[l];
      auto block = a.block_basis(bv, av);  // e_av A e_bv
      Vec lambda = Vec::Zero(a.dim);
      for (std::size_t r = 0; r < block.size(); ++r)
        lambda += a.basis_vec(block[r]) * column(pres.p0_off[l][(std::size_t)av] + (Eigen::Index)r);
      out[k].push_back(std::move(lambda));
    }
  }
  return out;
}

namespace {

/// Element lambda in e_a A e_b (src b, tgt a) induces I_a -> I_b; at vertex v
/// this is the transpose of left multiplication e_b A e_v -> e_a A e_v.
Morphism nakayama_component(const Algebra::Ptr& alg, int a_vert, int b_vert, const Vec& lambda,
                            const Module& ia, const Module& ib) {
  const Algebra& a = *alg;
  Morphism f{ia, ib, {}};
  for (int v = 0; v < a.verts; ++v) {
    auto rows = a.block_basis(v, a_vert);  // e_a A e_v
    auto cols = a.block_basis(v, b_vert);  // e_b A e_v
    Mat l((Eigen::Index)rows.size(), (Eigen::Index)cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Vec prod = a.multiply(lambda, a.basis_vec(cols[c]));
      for (std::size_t r = 0; r < rows.size(); ++r) l((Eigen::Index)r, (Eigen::Index)c) = prod(rows[r]);
    }
    f.comp.push_back(l.transpose());
  }
  return f;
}

Module compute_tau(const Module& m) {
  const auto pres = min_proj_presentation(m);
  if (pres.p1_verts.empty()) return zero_module(m.alg);
  const Algebra& a = *m.alg;

  std::vector<Module> inj0, inj1;
  for (int v : pres.p1_verts) inj1.push_back(injective_module(m.alg, v));
  for (int v : pres.p0_verts) inj0.push_back(injective_module(m.alg, v));
  auto nu1 = direct_sum(inj1);
  auto nu0 = direct_sum(inj0);

  auto lambdas = presentation_elements(pres);
  Morphism nud = zero_morphism(nu1.mod, nu0.mod);
  for (std::size_t k = 0; k < pres.p1_verts.size(); ++k) {
    const int av = pres.p1_verts[k];
    for (std::size_t l = 0; l < pres.p0_verts.size(); ++l) {
      const int bv = pres.p0_verts[l];
      if (is_zero_vec(DenseVec<Rational>(lambdas[k][l]))) continue;
      Morphism piece = nakayama_component(m.alg, av, bv, lambdas[k][l], inj1[k], inj0[l]);
      nud = add(nud, compose(nu0.incl[l], compose(piece, nu1.proj[k])));
    }
  }
  if (!is_module_morphism(nud)) throw std::logic_error("tau: Nakayama image is not a module morphism");
  auto ki = kernel_image(nud);
  return ki.kernel;
}

}  // namespace

Module tau(const Module& m) {
  auto& memo = memo_for(m.alg);
  const std::string key = m.content_key();
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.tau.find(key);
    if (it != memo.tau.end()) return *it->second;
  }
  auto result = std::make_shared<const Module>(compute_tau(m));
  std::lock_guard<std::mutex> lock(memo.mu);
  auto [it, inserted] = memo.tau.emplace(key, result);
  return *it->second;
}

Module tau_inverse(const Module& m) { return dual_module(tau(dual_module(m))); }

bool is_projective_module(const Module& m) {
  if (m.is_zero()) return true;
  return min_proj_presentation(m).ker.is_zero();
}

bool is_injective_module(const Module& m) { return is_projective_module(dual_module(m)); }

std::optional<int> proj_dimension(const Module& m, int cap) {
  if (cap < 0) throw std::invalid_argument("proj_dimension: negative cap");
  Module cur = m;
  int d = 0;
  for (;;) {
    auto pres = min_proj_presentation(cur);
    if (pres.ker.is_zero()) return d;
    if (++d > cap) return std::nullopt;
    cur = pres.ker;
  }
}

long euler_form(const std::vector<long>& d, const std::vector<long>& e, const Quiver& q) {
  long out = 0;
  for (std::size_t i = 0; i < d.size(); ++i) out += d[i] * e[i];
  for (const auto& a : q.arrows) out -= d[(std::size_t)a.source] * e[(std::size_t)a.target];
  return out;
}

ExtSpace ext1(const Module& b, const Module& c) {
  if (b.alg != c.alg) throw std::invalid_argument("ext1: modules over different algebras");
  ExtSpace out;
  out.b = b;
  out.c = c;
  out.pres = min_proj_presentation(b);
  auto hk = hom_space(out.pres.ker, c);
  if (hk.empty()) {
    out.dim = 0;
    return out;
  }
  auto hp = hom_space(out.pres.p0, c);
  // coordinates of f . ker_incl in the Hom(ker, c) basis
  Eigen::Index coords = 0;
  for (std::size_t v = 0; v < c.dims.size(); ++v) coords += (Eigen::Index)c.dims[v] * out.pres.ker.dims[v];
  Mat basis_cols(coords, (Eigen::Index)hk.size());
  auto flatten = [&](const Morphism& f) {
    Vec v(coords);
    Eigen::Index at = 0;
    for (std::size_t u = 0; u < f.comp.size(); ++u) {
      Vec piece = vectorize(f.comp[u]);
      v.segment(at, piece.size()) = piece;
      at += piece.size();
    }
    return v;
  };
  for (std::size_t k = 0; k < hk.size(); ++k) basis_cols.col((Eigen::Index)k) = flatten(hk[k]);
  Mat restr(coords, (Eigen::Index)hp.size());
  for (std::size_t k = 0; k < hp.size(); ++k) restr.col((Eigen::Index)k) = flatten(compose(hp[k], out.pres.ker_incl));
  auto image_coords = solve_matrix(basis_cols, restr);
  if (!image_coords) throw std::logic_error("ext1: restriction does not land in Hom(ker, c)");
  // complement of the image inside Hom(ker, c)
  Mat image_span = column_space_basis(*image_coords);
  Mat aug = hstack(image_span, Mat(Mat::Identity((Eigen::Index)hk.size(), (Eigen::Index)hk.size())));
  auto pivots = rref_in_place(aug);
  for (auto p : pivots) {
    if (p < image_span.cols()) continue;
    out.cocycles.push_back(hk[(std::size_t)(p - image_span.cols())]);
  }
  out.dim = (int)out.cocycles.size();
  return out;
}

int ext1_dim(const Module& b, const Module& c) { return ext1(b, c).dim; }

Extension materialize_extension(const ExtSpace& ext, const std::vector<int>& which) {
  if (which.empty()) throw std::invalid_argument("materialize_extension: empty cocycle choice");
  const int r = (int)which.size();
  std::vector<Module> bs(r, ext.b), p0s(r, ext.pres.p0), kers(r, ext.pres.ker);
  auto bpow = direct_sum(bs);
  std::vector<Module> big_parts;
  big_parts.push_back(ext.c);
  for (int k = 0; k < r; ++k) big_parts.push_back(ext.pres.p0);
  auto big = direct_sum(big_parts);
  auto kpow = direct_sum(kers);

  // theta: ker^r -> c (+) P0^r,  (g_k, -incl)
  Morphism theta = zero_morphism(kpow.mod, big.mod);
  for (int k = 0; k < r; ++k) {
    const Morphism& g = ext.cocycles[(std::size_t)which[(std::size_t)k]];
    theta = add(theta, compose(big.incl[0], compose(g, kpow.proj[(std::size_t)k])));
    theta = add(theta, scale(Rational(-1), compose(big.incl[(std::size_t)k + 1],
                                                   compose(ext.pres.ker_incl, kpow.proj[(std::size_t)k]))));
  }
  std::vector<Mat> span;
  for (std::size_t v = 0; v < big.mod.dims.size(); ++v) span.push_back(theta.comp[v]);
  auto sq = sub_quotient(big.mod, span);

  Extension out;
  out.e = sq.quot;
  out.b_power = bpow.mod;
  out.r = r;
  out.incl = compose(sq.proj, big.incl[0]);
  // descend (0, cover^r) through the quotient via the section
  Morphism h = zero_morphism(big.mod, bpow.mod);
  for (int k = 0; k < r; ++k)
    h = add(h, compose(bpow.incl[(std::size_t)k], compose(ext.pres.cover, big.proj[(std::size_t)k + 1])));
  Morphism onto{out.e, bpow.mod, {}};
  for (std::size_t v = 0; v < big.mod.dims.size(); ++v) onto.comp.push_back(Mat(h.comp[v] * sq.section[v]));
  out.onto = std::move(onto);

  // exactness checks
  if (out.e.total_dim() != ext.c.total_dim() + r * ext.b.total_dim())
    throw std::logic_error("materialize_extension: middle term has wrong dimension");
  if (!is_module_morphism(out.incl) || !is_module_morphism(out.onto))
    throw std::logic_error("materialize_extension: structure maps are not morphisms");
  for (std::size_t v = 0; v < out.incl.comp.size(); ++v)
    if (rank(out.incl.comp[v]) != ext.c.dims[v] || rank(out.onto.comp[v]) != bpow.mod.dims[v])
      throw std::logic_error("materialize_extension: sequence not exact at the ends");
  if (!compose(out.onto, out.incl).is_zero())
    throw std::logic_error("materialize_extension: composite not zero");
  return out;
}

UniversalExtension universal_extension(const Module& b, const Module& c) {
  auto ext = ext1(b, c);
  if (ext.dim == 0) throw std::invalid_argument("universal_extension: Ext^1(b, c) = 0");
  std::vector<int> all(ext.dim);
  for (int i = 0; i < ext.dim; ++i) all[i] = i;
  UniversalExtension out;
  out.full = materialize_extension(ext, all);
  out.e_full = out.full.e;
  out.r_full = ext.dim;
  // strip summands isomorphic to b; what remains is the minimal middle term
  std::vector<Module> keep;
  int stripped = 0;
  for (const auto& s : decompose(out.e_full)) {
    if (is_isomorphic(s.part, b))
      ++stripped;
    else
      keep.push_back(s.part);
  }
  out.r = ext.dim - stripped;
  out.e = keep.empty() ? zero_module(b.alg) : direct_sum(keep).mod;
  if (out.e.total_dim() != c.total_dim() + out.r * b.total_dim())
    throw std::logic_error("universal_extension: stripped term has wrong dimension");
  if (hom_dim(b, b) == 1 && stripped != 0)
    throw std::logic_error("universal_extension: unexpected split summand over a trivial endomorphism ring");
  return out;
}

UniversalCoextension universal_coextension(const Module& b, const Module& c) {
  auto op = universal_extension(dual_module(c), dual_module(b));
  UniversalCoextension out;
  out.e = dual_module(op.e);
  out.l = op.r;
  return out;
}

}  // namespace tauseq
