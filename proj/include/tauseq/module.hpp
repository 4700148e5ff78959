#pragma once

#include "tauseq/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tauseq {

/// A finite dimensional left module given by one vector space per vertex and
/// one matrix per algebra generator (arrow or loop). Immutable by convention.
struct Module {
  Algebra::Ptr alg;
  std::vector<int> dims;
  std::vector<Mat> act;  // act[g]: dims[src(g)] -> dims[tgt(g)]

  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  std::vector<long> dim_vector() const;
  /// Canonical serialization, usable as a memo key.
  std::string content_key() const;
};

struct Morphism {
  Module src, tgt;
  std::vector<Mat> comp;  // per vertex

  bool is_zero() const;
  bool is_iso() const;  // every vertex component invertible
};

Module zero_module(Algebra::Ptr alg);
Module simple_module(Algebra::Ptr alg, int v);
Module projective_module(Algebra::Ptr alg, int v);
Module injective_module(Algebra::Ptr alg, int v);
bool module_eq(const Module& a, const Module& b);  // equality on the nose

/// Checks the defining relations of the algebra on the generator matrices.
void validate_module(const Module& m);

/// Action of an arbitrary basis element, assembled from its generator word
/// expression: dims[src(b)] -> dims[tgt(b)].
Mat basis_action(const Module& m, int basis_index);
/// Action of a general algebra element as a single endomorphism matrix of
/// the total space (block structure by vertex).
Mat element_action_total(const Module& m, const Vec& elem);

Morphism identity_morphism(const Module& m);
Morphism zero_morphism(const Module& src, const Module& tgt);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism add(const Morphism& f, const Morphism& g);
Morphism scale(const Rational& c, const Morphism& f);
bool is_module_morphism(const Morphism& f);

/// Deterministic basis of Hom(M, N), one kernel computation. Memoized.
std::vector<Morphism> hom_space(const Module& m, const Module& n);
int hom_dim(const Module& m, const Module& n);
/// The intertwining system whose kernel is Hom(M, N); used directly by the
/// prime-field cross-check harness.
Mat hom_system(const Module& m, const Module& n);

struct SubQuotient {
  Module sub;
  Morphism incl;  // sub -> ambient
  Module quot;
  Morphism proj;  // ambient -> quot
  std::vector<Mat> section;  // standard-vector lift of quot coordinates
};

/// Submodule spanned per vertex by the given columns (closed under the
/// action; verified) together with the quotient.
SubQuotient sub_quotient(const Module& m, const std::vector<Mat>& span);

struct KernelImage {
  Module kernel;
  Morphism kernel_incl;
  Module image;
  Morphism image_incl;     // image -> tgt
  Morphism onto_image;     // src -> image
  Module cokernel;
  Morphism coker_proj;     // tgt -> cokernel
};
KernelImage kernel_image(const Morphism& f);

struct DirectSum {
  Module mod;
  std::vector<Morphism> incl;  // part -> sum
  std::vector<Morphism> proj;  // sum -> part
};
DirectSum direct_sum(const std::vector<Module>& parts);

/// Dual module over the opposite algebra.
Module dual_module(const Module& m);

/// Morphism P_v -> M determined by the image of the idempotent generator,
/// a vector in M_v.
Morphism from_projective(const Module& proj_v, int v, const Module& m, const Vec& value);

Module radical_submodule_span(const Module& m, std::vector<Mat>& span_out);
SubQuotient radical_and_top(const Module& m);

/// True iff End(m)/rad End(m) is one dimensional (trace-form radical).
bool is_indecomposable(const Module& m);

struct Summand {
  Module part;
  Morphism incl;  // part -> m
  Morphism proj;  // m -> part
};
/// Krull-Schmidt decomposition by Fitting splittings over a deterministic
/// sweep of End(m). Throws a diagnostic if the sweep fails to split a
/// decomposable module.
std::vector<Summand> decompose(const Module& m);

/// Deterministic isomorphism search: sweep of hom-basis combinations, then a
/// decomposition-based fallback for high-multiplicity modules. Returns a
/// verified invertible witness when isomorphic.
std::optional<Morphism> iso_witness(const Module& m, const Module& n);
bool is_isomorphic(const Module& m, const Module& n);

/// Trace of add(m) in x and the associated quotient x -> x/t_m(x).
struct TraceData {
  Module sub;
  Morphism incl;
  Module quot;
  Morphism proj;
};
TraceData trace_in(const Module& m, const Module& x);
bool gen_membership(const Module& x, const Module& m);  // x in Gen m

/// Iterated torsion-free functor: quotient by the trace, repeated until the
/// trace vanishes (one step when Gen m is a torsion class).
Module torsion_free_quotient(const Module& m, const Module& x);
/// Iterated reject: largest submodule all of whose maps to s vanish.
Module reject_radical(const Module& x, const Module& s);

}  // namespace tauseq
