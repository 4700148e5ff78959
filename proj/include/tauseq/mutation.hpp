#pragma once

#include "tauseq/tautilt.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tauseq {

/// Sequences are lists of catalog entries of a world, leftmost first.
using Seq = std::vector<int>;

bool is_tau_exceptional(const WorldPtr& w, const Seq& seq);
/// Classical exceptional sequence conditions: End = k, no self-extensions,
/// Hom and Ext vanishing from right to left. Entries must have finite
/// projective dimension within the cap.
bool is_exceptional(const WorldPtr& w, const Seq& seq, int pd_cap = 8);

/// All tau-exceptional sequences of the given length, entries in catalog
/// order, built by the recursive reduction. Memoized per world.
std::vector<Seq> enumerate_sequences(const WorldPtr& w, int length);
std::vector<Seq> enumerate_complete(const WorldPtr& w);
/// Hereditary check route: brute force over tuples using only the classical
/// Hom/Ext vanishing conditions (kept independent of the reduction
/// machinery).
std::vector<Seq> enumerate_complete_classical(const WorldPtr& w);

struct PairClass {
  bool left_regular = false;
  bool right_regular = false;
  bool left_mutable = false;
  bool right_mutable = false;
};

/// Left/right regularity and mutability of a tau-exceptional pair (b, c).
PairClass classify_pair(const WorldPtr& w, int b, int c);

/// BHM left mutation of a tau-exceptional pair; returns (c', b') and checks
/// the context is preserved.
std::pair<int, int> phi_pair(const WorldPtr& w, int b, int c);

/// Left mutation at position i (1-based) of a tau-exceptional sequence,
/// applied inside the iterated perpendicular category of the tail.
Seq phi(const WorldPtr& w, const Seq& seq, int i);
/// Right mutation: the unique phi-preimage at position i.
Seq phi_inverse(const WorldPtr& w, const Seq& seq, int i);

/// Classical mutation of exceptional sequences over a hereditary world by
/// unique-completion search, with the constructive description
/// (extension / hom-kernel-cokernel / transposition) asserted as a
/// cross-check.
Seq sigma(const WorldPtr& w, const Seq& seq, int i, bool right = false);

struct MutationGraph {
  std::vector<Seq> vertices;                  // sorted by label tuple
  std::vector<std::string> labels;            // "(A,B,C)"
  std::vector<std::vector<int>> phi_edges;    // [vertex][i-1] = target vertex
  int rank = 0;

  int vertex_of(const std::string& label) const;
  bool connected() const;
};

MutationGraph mutation_graph(const WorldPtr& w, int threads = 0);
std::string graph_to_dot(const MutationGraph& g);

std::string seq_label(const World& w, const Seq& s);

struct VerifyLine {
  std::string check;
  bool pass = false;
  std::string details;
};
struct VerifyReport {
  std::vector<VerifyLine> lines;
  bool all_pass() const;
  std::string to_text() const;  // line-oriented CHECK <name> <PASS|FAIL> <details>
};

/// Named verification checks: main-theorem, braid, transitivity, uniqueness,
/// r-exceptional, e-square, mutation-complete, figure1, prime-crosscheck.
VerifyReport verify_suite(const TensorSetup& ts, const std::vector<std::string>& checks,
                          const std::string& figure_golden_text = "", int threads = 0);

/// Canonical edge-list text of the mutation graph, one line per edge:
/// "phi<i> <src> -> <dst>", sorted.
std::string graph_edge_list(const MutationGraph& g);

}  // namespace tauseq
