#include "tauseq/tautilt.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tauseq {

namespace {

/// Coordinates of a morphism in a basis of the same hom space.
Vec hom_coords(const std::vector<Morphism>& basis, const Morphism& f) {
  Eigen::Index len = 0;
  for (const auto& c : f.comp) len += c.rows() * c.cols();
  auto flatten = [&](const Morphism& g) {
    Vec v(len);
    Eigen::Index at = 0;
    for (const auto& c : g.comp) {
      Vec piece = vectorize(c);
      v.segment(at, piece.size()) = piece;
      at += piece.size();
    }
    return v;
  };
  Mat cols(len, (Eigen::Index)basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) cols.col((Eigen::Index)k) = flatten(basis[k]);
  auto sol = solve_one(cols, flatten(f));
  if (!sol) throw std::logic_error("hom_coords: morphism outside the hom space");
  return *sol;
}

Module sum_of_entries(const World& w, const std::vector<int>& entries) {
  if (entries.empty()) return zero_module(w.alg);
  std::vector<Module> parts;
  for (int e : entries) parts.push_back(w.mod(e));
  return parts.size() == 1 ? parts[0] : direct_sum(parts).mod;
}

void split_parts(const World& w, const std::vector<StrictObj>& u, std::vector<int>& mods,
                 std::vector<int>& shifts) {
  (void)w;
  for (const auto& o : u) (o.shifted ? shifts : mods).push_back(o.entry);
}

}  // namespace

int World::entry_of(const Module& m) const {
  int e = catalog.find_module(m);
  if (e < 0) throw std::runtime_error("world: module is not in the candidate catalog");
  return e;
}

bool World::is_world_projective(int entry) const {
  for (int p : proj_entries)
    if (p == entry) return true;
  return false;
}

Module World::tau_entry(int entry) const { return tau(mod(entry)); }

bool World::tau_rigid(int entry) const {
  Module t = tau_entry(entry);
  return t.is_zero() || hom_dim(mod(entry), t) == 0;
}

std::string World::strict_name(const StrictObj& o) const {
  return name(o.entry) + (o.shifted ? "[1]" : "");
}

WorldPtr hereditary_world(const TensorSetup& ts) {
  auto w = std::make_shared<World>();
  w->alg = ts.kq;
  w->catalog = hereditary_catalog(ts.kq, ts.quiver);
  w->hereditary = true;
  w->quiver = ts.quiver;
  for (int v = 0; v < ts.quiver.vertices; ++v) w->proj_entries.push_back(w->entry_of(projective_module(ts.kq, v)));
  return w;
}

WorldPtr make_top_world(const TensorSetup& ts) {
  if (ts.trivial()) return hereditary_world(ts);
  auto w = std::make_shared<World>();
  w->alg = ts.lambda;
  w->catalog = catalog_for(ts);
  w->hereditary = false;
  w->quiver = ts.quiver;
  for (int v = 0; v < ts.quiver.vertices; ++v)
    w->proj_entries.push_back(w->entry_of(projective_module(ts.lambda, v)));
  return w;
}

bool is_support_tau_rigid(const World& w, const std::vector<StrictObj>& u) {
  std::vector<int> mods, shifts;
  split_parts(w, u, mods, shifts);
  for (int s : shifts)
    if (!w.is_world_projective(s)) return false;
  Module m = sum_of_entries(w, mods);
  Module p = sum_of_entries(w, shifts);
  if (!m.is_zero()) {
    Module tm = tau(m);
    if (!tm.is_zero() && hom_dim(m, tm) != 0) return false;
  }
  if (!p.is_zero() && !m.is_zero() && hom_dim(p, m) != 0) return false;
  return true;
}

std::vector<int> perp_members(const World& w, const std::vector<StrictObj>& defining) {
  std::vector<int> mods, shifts;
  split_parts(w, defining, mods, shifts);
  Module m = sum_of_entries(w, mods);
  Module p = sum_of_entries(w, shifts);
  Module tm = m.is_zero() ? zero_module(w.alg) : tau(m);
  std::vector<int> out;
  for (int x = 0; x < w.catalog.size(); ++x) {
    const Module& xm = w.mod(x);
    if (!m.is_zero() && hom_dim(m, xm) != 0) continue;
    if (!tm.is_zero() && hom_dim(xm, tm) != 0) continue;
    if (!p.is_zero() && hom_dim(p, xm) != 0) continue;
    out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// torsion class Ext-projectives (Auslander-Smalo criteria)
// ---------------------------------------------------------------------------

std::vector<int> bongartz_entries(const WorldPtr& w, const Module& m) {
  Module tm = m.is_zero() ? zero_module(w->alg) : tau(m);
  std::vector<int> out;
  for (int x = 0; x < w->catalog.size(); ++x) {
    if (!tm.is_zero() && hom_dim(w->mod(x), tm) != 0) continue;  // x in perp(tau m)
    Module tx = w->tau_entry(x);
    if (tx.is_zero() || reject_radical(tx, tm).is_zero()) out.push_back(x);
  }
  return out;
}

std::vector<int> ext_projectives_in_gen(const WorldPtr& w, const Module& gen) {
  std::vector<int> out;
  for (int x = 0; x < w->catalog.size(); ++x) {
    if (!gen_membership(w->mod(x), gen)) continue;
    Module tx = w->tau_entry(x);
    if (tx.is_zero() || hom_dim(gen, tx) == 0) out.push_back(x);
  }
  return out;
}

std::vector<int> ext_projectives_in_tclass(const WorldPtr& w, const Module& g) {
  std::vector<int> out;
  for (int x = 0; x < w->catalog.size(); ++x) {
    if (!torsion_free_quotient(g, w->mod(x)).is_zero()) continue;  // x in the torsion class
    Module tx = w->tau_entry(x);
    if (tx.is_zero() || hom_dim(g, tx) == 0) out.push_back(x);
  }
  return out;
}

std::vector<int> ext_injectives_in_fclass(const WorldPtr& w, const Module& g) {
  std::vector<int> out;
  for (int x = 0; x < w->catalog.size(); ++x) {
    if (hom_dim(g, w->mod(x)) != 0) continue;  // x in g-perp
    Module tix = tau_inverse(w->mod(x));
    if (tix.is_zero() || torsion_free_quotient(g, tix).is_zero()) out.push_back(x);
  }
  return out;
}

SplitParts split_ext_projectives(const WorldPtr& w, const std::vector<int>& ext_projs) {
  SplitParts sp;
  for (int x : ext_projs) {
    std::vector<int> others;
    for (int y : ext_projs)
      if (y != x) others.push_back(y);
    Module rest = sum_of_entries(*w, others);
    bool split = rest.is_zero() || !gen_membership(w->mod(x), rest);
    (split ? sp.split : sp.non_split).push_back(x);
  }
  return sp;
}

bool in_cogen(const Module& x, const Module& m) {
  if (x.is_zero()) return true;
  if (m.is_zero()) return false;
  auto homs = hom_space(x, m);
  for (std::size_t v = 0; v < x.dims.size(); ++v) {
    if (x.dims[v] == 0) continue;
    Mat stacked((Eigen::Index)homs.size() * m.dims[v], x.dims[v]);
    for (std::size_t k = 0; k < homs.size(); ++k)
      stacked.middleRows((Eigen::Index)k * m.dims[v], m.dims[v]) = homs[k].comp[v];
    if (kernel_basis(stacked).cols() != 0) return false;
  }
  return true;
}

SplitParts split_ext_injectives(const WorldPtr& w, const std::vector<int>& ext_injs) {
  SplitParts sp;
  for (int x : ext_injs) {
    std::vector<int> others;
    for (int y : ext_injs)
      if (y != x) others.push_back(y);
    Module rest = sum_of_entries(*w, others);
    bool split = rest.is_zero() || !in_cogen(w->mod(x), rest);
    (split ? sp.split : sp.non_split).push_back(x);
  }
  return sp;
}

bool is_gen_minimal(const WorldPtr& w, const std::vector<int>& summands) {
  for (std::size_t k = 0; k < summands.size(); ++k) {
    std::vector<int> others;
    for (std::size_t j = 0; j < summands.size(); ++j)
      if (j != k) others.push_back(summands[j]);
    Module rest = sum_of_entries(*w, others);
    if (!rest.is_zero() && gen_membership(w->mod(summands[k]), rest)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// perpendicular contexts
// ---------------------------------------------------------------------------

int PerpContext::member_pos(int ambient_entry) const {
  for (std::size_t k = 0; k < members.size(); ++k)
    if (members[k] == ambient_entry) return (int)k;
  return -1;
}

Module PerpContext::to_gamma(const Module& x) const {
  const Algebra::Ptr galg = gamma ? gamma->alg : nullptr;
  if (!galg) throw std::logic_error("to_gamma: members-only context has no reduced world");
  std::vector<std::vector<Morphism>> bases;
  for (int g : gens) bases.push_back(hom_space(ambient->mod(g), x));
  Module out;
  out.alg = galg;
  for (const auto& b : bases) out.dims.push_back((int)b.size());
  for (std::size_t gidx = 0; gidx < galg->gens.size(); ++gidx) {
    const int s = galg->gens[gidx].source, t = galg->gens[gidx].target;
    Vec raw_coords = gamma_change * galg->gen_elem[gidx];
    Mat a = Mat::Zero(out.dims[(std::size_t)t], out.dims[(std::size_t)s]);
    for (int col = 0; col < out.dims[(std::size_t)s]; ++col) {
      Morphism moved = zero_morphism(ambient->mod(gens[(std::size_t)t]), x);
      for (std::size_t r = 0; r < raw.size(); ++r) {
        if (raw_coords((Eigen::Index)r).is_zero()) continue;
        if (raw[r].i != t || raw[r].j != s)
          throw std::logic_error("to_gamma: generator has components outside its Peirce block");
        moved = add(moved, scale(raw_coords((Eigen::Index)r),
                                 compose(bases[(std::size_t)s][(std::size_t)col], raw[r].f)));
      }
      if (out.dims[(std::size_t)t] > 0) a.col(col) = hom_coords(bases[(std::size_t)t], moved);
    }
    out.act.push_back(std::move(a));
  }
  return out;
}

Morphism PerpContext::to_gamma_mor(const Morphism& f, const Module& gx, const Module& gy) const {
  Morphism out{gx, gy, {}};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto bx = hom_space(ambient->mod(gens[i]), f.src);
    auto by = hom_space(ambient->mod(gens[i]), f.tgt);
    Mat a((Eigen::Index)by.size(), (Eigen::Index)bx.size());
    for (std::size_t k = 0; k < bx.size(); ++k) a.col((Eigen::Index)k) = hom_coords(by, compose(f, bx[k]));
    out.comp.push_back(std::move(a));
  }
  return out;
}

Module PerpContext::from_gamma(const Module& y) const {
  if (y.is_zero()) return zero_module(ambient->alg);
  auto pres = min_proj_presentation(y);
  std::vector<Module> p0_parts;
  for (int v : pres.p0_verts) p0_parts.push_back(ambient->mod(gens[(std::size_t)v]));
  if (p0_parts.empty()) return zero_module(ambient->alg);
  auto p0 = direct_sum(p0_parts);
  if (pres.p1_verts.empty()) return p0.mod;
  std::vector<Module> p1_parts;
  for (int v : pres.p1_verts) p1_parts.push_back(ambient->mod(gens[(std::size_t)v]));
  auto p1 = direct_sum(p1_parts);
  auto lambdas = presentation_elements(pres);
  Morphism d = zero_morphism(p1.mod, p0.mod);
  for (std::size_t k = 0; k < pres.p1_verts.size(); ++k)
    for (std::size_t l = 0; l < pres.p0_verts.size(); ++l) {
      Vec raw_coords = gamma_change * lambdas[k][l];
      Morphism piece = zero_morphism(p1_parts[k], p0_parts[l]);
      bool nonzero = false;
      for (std::size_t r = 0; r < raw.size(); ++r) {
        if (raw_coords((Eigen::Index)r).is_zero()) continue;
        if (raw[r].i != pres.p1_verts[k] || raw[r].j != pres.p0_verts[l])
          throw std::logic_error("from_gamma: presentation element outside its block");
        piece = add(piece, scale(raw_coords((Eigen::Index)r), raw[r].f));
        nonzero = true;
      }
      if (nonzero) d = add(d, compose(p0.incl[l], compose(piece, p1.proj[k])));
    }
  return kernel_image(d).cokernel;
}

namespace {

std::string context_key(const World& w, const std::vector<StrictObj>& defining) {
  std::vector<std::string> names;
  for (const auto& o : defining) names.push_back(w.strict_name(o));
  std::sort(names.begin(), names.end());
  std::string key;
  for (const auto& n : names) key += n + "&";
  return key;
}

/// Build the reduced world over Gamma = End(G)^op and the transports.
void finish_context(PerpContext& ctx) {
  const World& w = *ctx.ambient;
  std::vector<Module> gmods;
  for (int g : ctx.gens) gmods.push_back(w.mod(g));
  if (gmods.empty()) return;  // rank zero: no reduced world needed
  ctx.g_sum = gmods.size() == 1 ? gmods[0] : direct_sum(gmods).mod;

  // raw basis of End(G) organized by (source part, target part)
  std::vector<std::vector<std::vector<Morphism>>> homs(
      gmods.size(), std::vector<std::vector<Morphism>>(gmods.size()));
  int dim = 0;
  for (std::size_t i = 0; i < gmods.size(); ++i)
    for (std::size_t j = 0; j < gmods.size(); ++j) {
      homs[i][j] = hom_space(gmods[i], gmods[j]);
      for (const auto& f : homs[i][j]) ctx.raw.push_back({(int)i, (int)j, f});
      dim += (int)homs[i][j].size();
    }
  std::vector<int> raw_off;
  {
    int at = 0;
    for (std::size_t i = 0; i < gmods.size(); ++i)
      for (std::size_t j = 0; j < gmods.size(); ++j) {
        raw_off.push_back(at);
        at += (int)homs[i][j].size();
      }
  }
  auto block_off = [&](int i, int j) { return raw_off[(std::size_t)(i * (int)gmods.size() + j)]; };
  // opposite multiplication: for f: G_i -> G_j and g: G_j -> G_l the product
  // f *op g composes the underlying maps the other way around
  Mat mult = Mat::Zero((Eigen::Index)dim * dim, dim);
  for (std::size_t a = 0; a < ctx.raw.size(); ++a)
    for (std::size_t b = 0; b < ctx.raw.size(); ++b) {
      if (ctx.raw[a].j != ctx.raw[b].i) continue;
      Morphism prod = compose(ctx.raw[b].f, ctx.raw[a].f);  // G_{a.i} -> G_{b.j}
      Vec coords = hom_coords(homs[(std::size_t)ctx.raw[a].i][(std::size_t)ctx.raw[b].j], prod);
      for (Eigen::Index c = 0; c < coords.size(); ++c)
        mult((Eigen::Index)a * dim + (Eigen::Index)b, block_off(ctx.raw[a].i, ctx.raw[b].j) + c) = coords(c);
    }
  std::vector<Vec> idems;
  for (std::size_t i = 0; i < gmods.size(); ++i) {
    Vec v = Vec::Zero(dim);
    Vec coords = hom_coords(homs[i][i], identity_morphism(gmods[i]));
    for (Eigen::Index c = 0; c < coords.size(); ++c) v(block_off((int)i, (int)i) + c) = coords(c);
    idems.push_back(v);
  }
  std::string gid = w.alg->id + ":Gamma(";
  for (std::size_t k = 0; k < ctx.defining.size(); ++k)
    gid += (k ? "," : "") + w.strict_name(ctx.defining[k]);
  gid += ")";
  Algebra::Ptr galg = algebra_from_structure(gid, dim, mult, idems, {}, &ctx.gamma_change);

  auto gworld = std::make_shared<World>();
  gworld->alg = galg;
  gworld->hereditary = false;
  gworld->catalog.alg = galg;
  {
    // set a bare world first so to_gamma can run during catalog transport
    auto tmp = std::make_shared<World>();
    tmp->alg = galg;
    ctx.gamma = tmp;
  }
  for (int m : ctx.members) {
    CatalogEntry e;
    e.mod = ctx.to_gamma(w.mod(m));
    e.name = w.catalog.at(m).name;
    e.label = w.catalog.at(m).label;
    e.aliases = w.catalog.at(m).aliases;
    gworld->catalog.entries.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < ctx.gens.size(); ++i) {
    int pos = ctx.member_pos(ctx.gens[i]);
    if (pos < 0) throw std::logic_error("perp context: relative projective is not a member");
    gworld->proj_entries.push_back(pos);
    if (!is_isomorphic(gworld->catalog.at(pos).mod, projective_module(galg, (int)i)))
      throw std::logic_error("perp context: transported generator is not the expected projective");
  }
  ctx.gamma = gworld;
}

}  // namespace

PerpPtr perp_context(const WorldPtr& w, const std::vector<StrictObj>& defining) {
  const std::string key = context_key(*w, defining);
  {
    std::lock_guard<std::mutex> lock(w->mu);
    auto it = w->perp_cache.find(key);
    if (it != w->perp_cache.end()) return it->second;
  }
  if (!is_support_tau_rigid(*w, defining))
    throw std::invalid_argument("perp_context: defining object is not support tau-rigid");

  auto ctx = std::make_shared<PerpContext>();
  ctx->ambient = w;
  ctx->defining = defining;
  ctx->members = perp_members(*w, defining);

  std::vector<int> mods, shifts;
  split_parts(*w, defining, mods, shifts);

  if (!mods.empty() && !shifts.empty()) {
    // mixed: reduce by the shifted part first, then inside its world
    std::vector<StrictObj> shifted_only;
    for (int s : shifts) shifted_only.push_back({s, true});
    PerpPtr ctx1 = perp_context(w, shifted_only);
    std::vector<StrictObj> inner;
    for (int m : mods) {
      int pos = ctx1->member_pos(m);
      if (pos < 0) throw std::logic_error("perp_context: module part escapes the shifted reduction");
      inner.push_back({pos, false});
    }
    PerpPtr ctx2 = perp_context(ctx1->gamma, inner);
    std::vector<int> mapped_members, mapped_gens;
    for (int m2 : ctx2->members) mapped_members.push_back(ctx1->members[(std::size_t)m2]);
    for (int g2 : ctx2->gens) mapped_gens.push_back(ctx1->members[(std::size_t)g2]);
    std::vector<int> sorted_a = mapped_members, sorted_b = ctx->members;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b)
      throw std::logic_error("perp_context: nested and direct member computations disagree");
    ctx->gens = mapped_gens;
  } else if (!shifts.empty()) {
    // J(P[1]) = P-perp; relative projectives are f_P(P_v) away from the support
    std::set<int> support;
    for (int s : shifts)
      for (int v = 0; v < w->rank(); ++v)
        if (w->proj_entries[(std::size_t)v] == s) support.insert(v);
    Module p = sum_of_entries(*w, shifts);
    for (int v = 0; v < w->rank(); ++v) {
      if (support.count(v)) continue;
      Module f = torsion_free_quotient(p, w->mod(w->proj_entries[(std::size_t)v]));
      int entry = w->catalog.find_module(f);
      if (entry < 0 || ctx->member_pos(entry) < 0)
        throw std::logic_error(
            "perp_context: quotient projective not found among members (candidate set exhausted)");
      ctx->gens.push_back(entry);
    }
  } else {
    // J(M): Bongartz complements pushed through the torsion-free functor
    Module m = sum_of_entries(*w, mods);
    auto bon = bongartz_entries(w, m);
    if ((int)bon.size() != w->rank())
      throw std::logic_error("perp_context: Bongartz completion has wrong rank");
    for (int n : bon) {
      if (std::find(mods.begin(), mods.end(), n) != mods.end()) continue;
      Module f = torsion_free_quotient(m, w->mod(n));
      int entry = -1;
      for (int cand : ctx->members)
        if (w->mod(cand).dims == f.dims && is_isomorphic(w->mod(cand), f)) {
          entry = cand;
          break;
        }
      if (entry < 0)
        throw std::logic_error(
            "perp_context: relative projective not found among members (candidate set exhausted)");
      if (std::find(ctx->gens.begin(), ctx->gens.end(), entry) != ctx->gens.end())
        throw std::logic_error("perp_context: duplicate relative projective");
      ctx->gens.push_back(entry);
    }
  }
  if ((int)ctx->gens.size() != w->rank() - (int)defining.size())
    throw std::logic_error("perp_context: Jasso rank violated: " + std::to_string(ctx->gens.size()) +
                           " generators for corank " + std::to_string(defining.size()));
  finish_context(*ctx);

  std::lock_guard<std::mutex> lock(w->mu);
  auto [it, inserted] = w->perp_cache.emplace(key, ctx);
  return it->second;
}

// ---------------------------------------------------------------------------
// E-maps
// ---------------------------------------------------------------------------

namespace {

std::vector<int> defining_module_entries(const PerpContext& ctx) {
  std::vector<int> mods, shifts;
  split_parts(*ctx.ambient, ctx.defining, mods, shifts);
  return mods;
}

std::vector<int> defining_shift_entries(const PerpContext& ctx) {
  std::vector<int> mods, shifts;
  split_parts(*ctx.ambient, ctx.defining, mods, shifts);
  return shifts;
}

StrictObj shifted_pin(const PerpContext& ctx, const StrictObj& v) {
  const World& w = *ctx.ambient;
  std::vector<StrictObj> combined = ctx.defining;
  combined.push_back(v);
  std::vector<int> target = perp_members(w, combined);
  std::vector<int> matches;
  for (std::size_t i = 0; i < ctx.gens.size(); ++i) {
    std::vector<int> cut;
    for (int m : ctx.members)
      if (hom_dim(w.mod(ctx.gens[i]), w.mod(m)) == 0) cut.push_back(m);
    if (cut == target) matches.push_back((int)i);
  }
  if (matches.size() != 1)
    throw std::logic_error("e_map: shifted image not pinned uniquely (" + std::to_string(matches.size()) +
                           " candidates)");
  return StrictObj{ctx.gamma->proj_entries[(std::size_t)matches[0]], true};
}

}  // namespace

StrictObj e_map(const PerpContext& ctx, const StrictObj& v) {
  const World& w = *ctx.ambient;
  if (!ctx.gamma) throw std::logic_error("e_map: context has no reduced world");
  {
    std::vector<StrictObj> both = ctx.defining;
    both.push_back(v);
    if (!is_support_tau_rigid(w, both))
      throw std::invalid_argument("e_map: argument does not extend the defining object");
  }
  auto mods = defining_module_entries(ctx);
  Module m = sum_of_entries(w, mods);

  StrictObj out;
  if (!v.shifted) {
    const Module& x = w.mod(v.entry);
    if (m.is_zero()) {
      // reduction by a shifted projective leaves modules in place
      int pos = ctx.member_pos(v.entry);
      if (pos < 0) throw std::logic_error("e_map: module misses the shifted context");
      out = StrictObj{pos, false};
    } else if (!gen_membership(x, m)) {
      Module f = torsion_free_quotient(m, x);
      int pos = -1;
      for (std::size_t k = 0; k < ctx.members.size(); ++k) {
        const Module& cand = w.mod(ctx.members[k]);
        if (cand.dims == f.dims && is_isomorphic(cand, f)) {
          pos = (int)k;
          break;
        }
      }
      if (pos < 0) throw std::logic_error("e_map: torsion-free image not found among members");
      out = StrictObj{pos, false};
    } else {
      out = shifted_pin(ctx, v);
    }
  } else {
    out = shifted_pin(ctx, v);
  }
  if (!is_support_tau_rigid(*ctx.gamma, {out})) throw std::logic_error("e_map: image is not support tau-rigid");
  return out;
}

std::vector<StrictObj> e_map_domain(const PerpContext& ctx) {
  const World& w = *ctx.ambient;
  auto mods = defining_module_entries(ctx);
  auto shifts = defining_shift_entries(ctx);
  Module m = sum_of_entries(w, mods);
  Module p = sum_of_entries(w, shifts);
  Module tm = m.is_zero() ? zero_module(w.alg) : tau(m);
  std::vector<StrictObj> out;
  for (int x = 0; x < w.catalog.size(); ++x) {
    if (std::find(mods.begin(), mods.end(), x) != mods.end()) continue;
    const Module& xm = w.mod(x);
    if (!w.tau_rigid(x)) continue;
    Module tx = w.tau_entry(x);
    if (!tm.is_zero() && hom_dim(xm, tm) != 0) continue;
    if (!tx.is_zero() && !m.is_zero() && hom_dim(m, tx) != 0) continue;
    if (!p.is_zero() && hom_dim(p, xm) != 0) continue;
    out.push_back({x, false});
  }
  for (int v = 0; v < w.rank(); ++v) {
    int q = w.proj_entries[(std::size_t)v];
    if (std::find(shifts.begin(), shifts.end(), q) != shifts.end()) continue;
    if (!m.is_zero() && hom_dim(w.mod(q), m) != 0) continue;
    out.push_back({q, true});
  }
  return out;
}

StrictObj e_map_inverse(const PerpContext& ctx, const StrictObj& w_obj) {
  std::vector<StrictObj> hits;
  for (const auto& v : e_map_domain(ctx)) {
    StrictObj image = e_map(ctx, v);
    if (image == w_obj) hits.push_back(v);
  }
  if (hits.size() != 1)
    throw std::logic_error("e_map_inverse: bijection violated, " + std::to_string(hits.size()) + " preimages");
  return hits[0];
}

// ---------------------------------------------------------------------------
// lattices
// ---------------------------------------------------------------------------

namespace {

std::vector<Mat> loop_actions_at(const TensorSetup& ts, const Module& x, int vertex) {
  std::vector<Mat> loops((std::size_t)ts.r.radical_generators().size());
  for (std::size_t g = 0; g < ts.origins.size(); ++g)
    if (ts.origins[g].is_loop && ts.origins[g].vertex == vertex)
      loops[(std::size_t)ts.origins[g].rad_gen] = x.act[g];
  return loops;
}

}  // namespace

bool is_rq_lattice(const TensorSetup& ts, const Module& x) {
  if (x.alg != ts.lambda) throw std::invalid_argument("is_rq_lattice: module not over the tensor algebra");
  const int d = ts.r.dim();
  if (d == 1) return true;
  for (int v = 0; v < ts.quiver.vertices; ++v) {
    if (x.dims[(std::size_t)v] % d != 0) return false;
    const int m = x.dims[(std::size_t)v] / d;
    if (m == 0) continue;
    auto loops = loop_actions_at(ts, x, v);
    if (ts.r.truncation() >= 2) {
      // free over k[x]/(x^t): every Jordan block of the loop has size exactly t
      Mat p = loops[0];
      for (int j = 1; j < ts.r.truncation(); ++j) {
        if (rank(p) != m * (ts.r.truncation() - j)) return false;
        p = Mat(p * loops[0]);
      }
      if (!is_zero_mat(p)) return false;
    } else {
      // general R: isomorphism search against R^m over the one-vertex algebra
      Module vert;
      vert.alg = ts.r_alg;
      vert.dims = {x.dims[(std::size_t)v]};
      for (std::size_t g = 0; g < ts.r_alg->gens.size(); ++g) vert.act.push_back(loops[g]);
      std::vector<Module> frees((std::size_t)m, projective_module(ts.r_alg, 0));
      Module target = m == 1 ? frees[0] : direct_sum(frees).mod;
      if (!is_isomorphic(vert, target)) return false;
    }
  }
  return true;
}

std::vector<Morphism> central_action(const TensorSetup& ts, const Module& x) {
  std::vector<Morphism> out;
  for (int rho = 0; rho < ts.r.dim(); ++rho) {
    Morphism f{x, x, {}};
    for (int v = 0; v < ts.quiver.vertices; ++v) {
      auto loops = loop_actions_at(ts, x, v);
      Mat total = Mat::Zero(x.dims[(std::size_t)v], x.dims[(std::size_t)v]);
      for (const auto& term : ts.r_alg->expr[(std::size_t)rho]) {
        Mat word = Mat::Identity(x.dims[(std::size_t)v], x.dims[(std::size_t)v]);
        for (int g : term.word) word = loops[(std::size_t)g] * word;
        total += word * term.coeff;
      }
      f.comp.push_back(std::move(total));
    }
    if (!is_module_morphism(f)) throw std::logic_error("central_action: central element is not an endomorphism");
    out.push_back(std::move(f));
  }
  return out;
}

bool is_r_exceptional(const TensorSetup& ts, const Module& x) {
  if (!is_rq_lattice(ts, x)) return false;
  if (ext1_dim(x, x) != 0) return false;
  if (hom_dim(x, x) != ts.r.dim()) return false;
  auto central = central_action(ts, x);
  // linear independence of the images of the R-basis in End(x)
  Eigen::Index len = 0;
  for (const auto& c : central[0].comp) len += c.rows() * c.cols();
  Mat cols = Mat::Zero(len, (Eigen::Index)central.size());
  for (std::size_t k = 0; k < central.size(); ++k) {
    Eigen::Index at = 0;
    for (const auto& c : central[k].comp) {
      Vec piece = vectorize(c);
      cols.col((Eigen::Index)k).segment(at, piece.size()) = piece;
      at += piece.size();
    }
  }
  return rank(cols) == (Eigen::Index)ts.r.dim();
}

std::string context_dump(const PerpContext& ctx) {
  const World& w = *ctx.ambient;
  std::ostringstream os;
  os << "context J(";
  for (std::size_t k = 0; k < ctx.defining.size(); ++k) os << (k ? "," : "") << w.strict_name(ctx.defining[k]);
  os << ")\n";
  os << "members:";
  for (int m : ctx.members) os << " " << w.name(m);
  os << "\ngenerators:";
  for (int g : ctx.gens) os << " " << w.name(g);
  os << "\ngamma dim = " << (ctx.gamma ? ctx.gamma->alg->dim : 0) << "\n";
  return os.str();
}

}  // namespace tauseq
