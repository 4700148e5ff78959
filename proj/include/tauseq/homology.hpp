#pragma once

#include "tauseq/module.hpp"

#include <optional>
#include <vector>

namespace tauseq {

/// Minimal projective presentation P1 -> P0 -> M -> 0 with the cover kernel
/// kept explicit (it carries the Ext computations).
struct ProjPresentation {
  Module m;
  std::vector<int> p0_verts, p1_verts;          // projective parts by vertex
  std::vector<std::vector<int>> p0_off, p1_off; // part offsets per vertex
  Module p0, p1;
  Morphism cover;         // p0 -> m, superfluous kernel
  Morphism d;             // p1 -> p0
  Module ker;             // ker(cover)
  Morphism ker_incl;      // ker -> p0
  Morphism p1_onto_ker;   // minimal cover of the kernel
};

ProjPresentation min_proj_presentation(const Module& m);

/// The elements lambda_{kl} in e_{a_k} A e_{b_l} describing d: P1 -> P0
/// between the projective parts (Hom(P_a, P_b) = e_a A e_b).
std::vector<std::vector<Vec>> presentation_elements(const ProjPresentation& pres);

/// AR translation computed as the kernel of the Nakayama image of the
/// minimal presentation; tau of a projective is zero.
Module tau(const Module& m);
Module tau_inverse(const Module& m);

bool is_projective_module(const Module& m);
bool is_injective_module(const Module& m);

/// Length of the minimal projective resolution, empty when it exceeds cap.
std::optional<int> proj_dimension(const Module& m, int cap);

/// Hereditary Euler form <d, e> = sum d_i e_i - sum_a d_s(a) e_t(a).
long euler_form(const std::vector<long>& d, const std::vector<long>& e, const Quiver& q);

struct ExtSpace {
  Module b, c;
  int dim = 0;
  ProjPresentation pres;           // presentation of b
  std::vector<Morphism> cocycles;  // representatives ker -> c
};

/// Ext^1(b, c) from Hom(ker, c) modulo restrictions of Hom(P0, c).
ExtSpace ext1(const Module& b, const Module& c);
int ext1_dim(const Module& b, const Module& c);

/// Pushout of the chosen cocycles: 0 -> c -> e -> b^r -> 0 with explicit
/// maps; r = which.size().
struct Extension {
  Module e;
  Module b_power;
  Morphism incl;   // c -> e
  Morphism onto;   // e -> b^r
  int r = 0;
};
Extension materialize_extension(const ExtSpace& ext, const std::vector<int>& which);

/// Middle term of the minimal right add(b)-approximation b^r -> c[1]:
/// the full cocycle basis is stacked and summands isomorphic to b split off
/// until none remain. For End(b) = k nothing splits and e == e_full.
struct UniversalExtension {
  Module e;        // minimal middle term
  int r = 0;       // minimal multiplicity
  Module e_full;
  int r_full = 0;
  Extension full;  // exact structure of the unstripped extension
};
UniversalExtension universal_extension(const Module& b, const Module& c);

/// Dual construction: 0 -> c^l -> e -> b -> 0, minimal left add(c[1])-side.
struct UniversalCoextension {
  Module e;
  int l = 0;
};
UniversalCoextension universal_coextension(const Module& b, const Module& c);

}  // namespace tauseq
