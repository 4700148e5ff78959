#pragma once

#include "tauseq/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tauseq {

/// The pair of algebras the engine runs on: the hereditary kQ and the tensor
/// algebra Lambda = R (x) kQ, with the bookkeeping needed to move modules
/// through the induction functor. For dim R = 1 the two coincide.
struct TensorSetup {
  LocalCoefficientAlgebra r;
  Quiver quiver;
  Algebra::Ptr kq;
  Algebra::Ptr lambda;
  Algebra::Ptr r_alg;  // R as a one-vertex algebra, for lattice tests
  // per lambda-generator: arrow index in quiver, or (loop vertex, radical gen)
  struct GenOrigin {
    bool is_loop = false;
    int arrow = -1;
    int vertex = -1;
    int rad_gen = -1;  // index into r.radical_generators()
  };
  std::vector<GenOrigin> origins;

  bool trivial() const { return r.dim() == 1; }
};

TensorSetup make_tensor_setup(const std::string& id, const LocalCoefficientAlgebra& r, const Quiver& q);

/// Lambda (x)_kQ m: vertex spaces tensored with R, arrows act as act (x) id,
/// loops as id (x) multiplication.
Module induce(const TensorSetup& ts, const Module& m);
/// Restriction of scalars: forget the loop actions.
Module restrict_to_kq(const TensorSetup& ts, const Module& x);

struct CatalogEntry {
  Module mod;
  std::string name;   // canonical, stable across runs
  std::string label;  // display name used in sequences and DOT output
  std::vector<std::string> aliases;
  int tau_next = -1;  // entry of tau^{-1}(mod) in the same orbit, -1 at the end
  int tau_prev = -1;
};

struct Catalog {
  Algebra::Ptr alg;
  std::vector<CatalogEntry> entries;

  int find_module(const Module& m) const;  // up to isomorphism, -1 if absent
  int find_name(const std::string& name) const;
  const CatalogEntry& at(int i) const { return entries[(std::size_t)i]; }
  int size() const { return (int)entries.size(); }
};

/// All indecomposables of a Dynkin hereditary algebra, constructed by
/// iterated AR translation from the projectives. Counts are certified
/// against the positive roots of the diagram.
Catalog hereditary_catalog(Algebra::Ptr kq, const Quiver& q);

/// The induced catalog over Lambda: images of the hereditary entries under
/// the induction functor, named Ind(<base name>).
Catalog induced_catalog(const TensorSetup& ts, const Catalog& hereditary);

/// Catalog for the setup: hereditary when R = k, induced otherwise.
Catalog catalog_for(const TensorSetup& ts);

}  // namespace tauseq
