#pragma once

#include "tauseq/catalog.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace tauseq {

struct World;
using WorldPtr = std::shared_ptr<const World>;
struct PerpContext;
using PerpPtr = std::shared_ptr<const PerpContext>;

/// An indecomposable object of C(W) = mod W + (mod W)[1]: a catalog module,
/// shifted iff it is projective in the world.
struct StrictObj {
  int entry = -1;
  bool shifted = false;

  friend bool operator==(const StrictObj& a, const StrictObj& b) {
    return a.entry == b.entry && a.shifted == b.shifted;
  }
  friend bool operator<(const StrictObj& a, const StrictObj& b) {
    return a.entry != b.entry ? a.entry < b.entry : a.shifted < b.shifted;
  }
};

/// A module category the tau-tilting machinery runs in: the top-level
/// algebra with its catalog of indecomposable tau-rigid candidates, or a
/// tau-perpendicular category realized over Gamma_U. Catalog names are
/// preserved along reductions, so objects keep their ambient identity.
struct World : std::enable_shared_from_this<World> {
  Algebra::Ptr alg;
  Catalog catalog;
  std::vector<int> proj_entries;  // catalog entry of P_v for each vertex v
  bool hereditary = false;
  std::optional<Quiver> quiver;

  int rank() const { return alg->verts; }
  const Module& mod(int entry) const { return catalog.at(entry).mod; }
  const std::string& name(int entry) const { return catalog.at(entry).name; }
  const std::string& label(int entry) const { return catalog.at(entry).label; }
  int entry_of(const Module& m) const;  // throws when absent
  bool is_world_projective(int entry) const;

  Module tau_entry(int entry) const;  // via homology, memoized there
  bool tau_rigid(int entry) const;

  std::string strict_name(const StrictObj& o) const;

  mutable std::mutex mu;
  mutable std::map<std::string, PerpPtr> perp_cache;
  mutable std::map<int, std::vector<std::vector<int>>> seq_cache;  // length -> sequences
};

WorldPtr make_top_world(const TensorSetup& ts);
WorldPtr hereditary_world(const TensorSetup& ts);  // the kQ side, even when dim R > 1

/// Support tau-rigidity of a sum of strict objects: the module part M is
/// tau-rigid, every shifted part is projective, and Hom(P, M) = 0.
bool is_support_tau_rigid(const World& w, const std::vector<StrictObj>& u);

/// tau-perpendicular category J(U) = M-perp /\ perp-tau-M /\ P-perp with its
/// relative projective generator and the reduced world over Gamma_U.
struct PerpContext {
  WorldPtr ambient;
  std::vector<StrictObj> defining;
  std::vector<int> members;   // ambient catalog entries lying in J(U)
  std::vector<int> gens;      // member entries that are the relative projectives
  Module g_sum;
  WorldPtr gamma;             // reduced world; null for members-only contexts
  Mat gamma_change;           // new Gamma basis in raw End(G) coordinates
  struct RawHom {
    int i, j;     // morphism G_i -> G_j
    Morphism f;
  };
  std::vector<RawHom> raw;

  int member_pos(int ambient_entry) const;  // -1 when absent
  Module to_gamma(const Module& x) const;
  Morphism to_gamma_mor(const Morphism& f, const Module& gx, const Module& gy) const;
  Module from_gamma(const Module& y) const;
};

PerpPtr perp_context(const WorldPtr& w, const std::vector<StrictObj>& defining);
/// Member set only (no generator, no reduced world); supports mixed
/// module/shifted defining objects, used for E-map pinning.
std::vector<int> perp_members(const World& w, const std::vector<StrictObj>& defining);

/// Bongartz completion: all indecomposable Ext-projectives of perp(tau m).
std::vector<int> bongartz_entries(const WorldPtr& w, const Module& m);
/// Ext-projectives of the torsion class Gen(gen).
std::vector<int> ext_projectives_in_gen(const WorldPtr& w, const Module& gen);
/// Ext-projectives of the smallest torsion class containing J(U), that is
/// perp(g_sum-perp); membership is the vanishing of the iterated trace
/// quotient and Ext-projectivity is Hom(G, tau X) = 0.
std::vector<int> ext_projectives_in_tclass(const WorldPtr& w, const Module& g);
/// Ext-injectives of the torsion-free class g-perp (dual criterion).
std::vector<int> ext_injectives_in_fclass(const WorldPtr& w, const Module& g);

struct SplitParts {
  std::vector<int> split, non_split;
};
SplitParts split_ext_projectives(const WorldPtr& w, const std::vector<int>& ext_projs);
SplitParts split_ext_injectives(const WorldPtr& w, const std::vector<int>& ext_injs);

bool is_gen_minimal(const WorldPtr& w, const std::vector<int>& summands);
bool in_cogen(const Module& x, const Module& m);

/// The Buan-Marsh bijection from complements of U to support tau-rigid
/// objects of C(J(U)). Module outputs are returned as member positions of
/// the reduced world; shifted outputs are the relative projectives, pinned
/// by matching J(U + V) inside J(U).
StrictObj e_map(const PerpContext& ctx, const StrictObj& v);
/// Valid arguments V with V + U support tau-rigid, V not a summand of U.
std::vector<StrictObj> e_map_domain(const PerpContext& ctx);
/// Unique preimage by exhausting the domain; throws a bijection-violation
/// diagnostic when the preimage is not unique.
StrictObj e_map_inverse(const PerpContext& ctx, const StrictObj& w_obj);

/// RQ-lattice and R-exceptional tests for modules over the tensor algebra.
bool is_rq_lattice(const TensorSetup& ts, const Module& x);
bool is_r_exceptional(const TensorSetup& ts, const Module& x);
/// The canonical central map R -> End(x): one endomorphism per R-basis
/// element, acting through the loop generators.
std::vector<Morphism> central_action(const TensorSetup& ts, const Module& x);

std::string context_dump(const PerpContext& ctx);

}  // namespace tauseq
