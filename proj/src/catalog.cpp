#include "tauseq/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tauseq {

TensorSetup make_tensor_setup(const std::string& id, const LocalCoefficientAlgebra& r, const Quiver& q) {
  TensorSetup ts{r, q, nullptr, nullptr, nullptr, {}};
  ts.kq = path_algebra(id + (r.dim() == 1 ? "" : ":kQ"), q, {});
  ts.lambda = r.dim() == 1 ? ts.kq : tensor_algebra(id, r, q);
  {
    Vec unit = Vec::Zero(r.dim());
    unit(0) = Rational(1);
    std::vector<GeneratorSpec> rgens;
    for (int g : r.radical_generators()) {
      GeneratorSpec spec;
      spec.name = r.labels()[(std::size_t)g];
      spec.source = spec.target = 0;
      spec.element = r.basis_vec(g);
      rgens.push_back(std::move(spec));
    }
    Mat mult(r.dim() * r.dim(), r.dim());
    for (int i = 0; i < r.dim(); ++i)
      for (int j = 0; j < r.dim(); ++j)
        mult.row(i * r.dim() + j) = r.multiply(r.basis_vec(i), r.basis_vec(j)).transpose();
    ts.r_alg = algebra_from_structure(id + ":R", r.dim(), mult, {unit}, rgens);
  }
  const auto& rad_gens = r.radical_generators();
  for (const auto& g : ts.lambda->gens) {
    TensorSetup::GenOrigin origin;
    if (g.source == g.target) {
      // loop named <label><vertex+1>
      origin.is_loop = true;
      origin.vertex = g.source;
      for (std::size_t k = 0; k < rad_gens.size(); ++k) {
        if (g.name == r.labels()[(std::size_t)rad_gens[k]] + std::to_string(g.source + 1)) {
          origin.rad_gen = (int)k;
          break;
        }
      }
      if (origin.rad_gen < 0 && r.dim() > 1)
        throw std::logic_error("tensor setup: unrecognized loop generator " + g.name);
    } else {
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].name == g.name) origin.arrow = (int)a;
      if (origin.arrow < 0) throw std::logic_error("tensor setup: unrecognized arrow generator " + g.name);
    }
    ts.origins.push_back(origin);
  }
  return ts;
}

Module induce(const TensorSetup& ts, const Module& m) {
  if (m.alg != ts.kq) throw std::invalid_argument("induce: module is not over the hereditary factor");
  if (ts.trivial()) return m;
  const int d = ts.r.dim();
  Module out;
  out.alg = ts.lambda;
  for (int v = 0; v < ts.quiver.vertices; ++v) out.dims.push_back(m.dims[(std::size_t)v] * d);
  for (std::size_t g = 0; g < ts.lambda->gens.size(); ++g) {
    const auto& origin = ts.origins[g];
    if (origin.is_loop) {
      const int v = origin.vertex;
      Mat xmult = ts.r.mult_matrix(ts.r.radical_generators()[(std::size_t)origin.rad_gen]);
      out.act.push_back(kronecker(Mat(Mat::Identity(m.dims[(std::size_t)v], m.dims[(std::size_t)v])), xmult));
    } else {
      out.act.push_back(kronecker(m.act[(std::size_t)origin.arrow], Mat(Mat::Identity(d, d))));
    }
  }
  return out;
}

Module restrict_to_kq(const TensorSetup& ts, const Module& x) {
  if (x.alg != ts.lambda) throw std::invalid_argument("restrict: module is not over the tensor algebra");
  if (ts.trivial()) return x;
  Module out;
  out.alg = ts.kq;
  out.dims = x.dims;
  for (std::size_t a = 0; a < ts.quiver.arrows.size(); ++a) {
    int gen = -1;
    for (std::size_t g = 0; g < ts.origins.size(); ++g)
      if (!ts.origins[g].is_loop && ts.origins[g].arrow == (int)a) gen = (int)g;
    if (gen < 0) throw std::logic_error("restrict: arrow missing in tensor algebra");
    out.act.push_back(x.act[(std::size_t)gen]);
  }
  return out;
}

int Catalog::find_module(const Module& m) const {
  for (int i = 0; i < size(); ++i)
    if (entries[(std::size_t)i].mod.dims == m.dims && is_isomorphic(entries[(std::size_t)i].mod, m)) return i;
  return -1;
}

namespace {

std::string strip_underscores(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != '_') out.push_back(c);
  return out;
}

std::string dims_tag(const Module& m) {
  std::ostringstream os;
  for (std::size_t v = 0; v < m.dims.size(); ++v) os << m.dims[v];
  return os.str();
}

/// Standard names applicable to a module: S/P/I with 1-based vertex index.
std::vector<std::string> standard_names(const Module& m, const std::vector<Module>& projs,
                                        const std::vector<Module>& injs) {
  std::vector<std::string> out;
  int unit_vertex = -1, total = 0;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    total += m.dims[v];
    if (m.dims[v] == 1) unit_vertex = (int)v;
  }
  if (total == 1) out.push_back("S" + std::to_string(unit_vertex + 1));
  for (std::size_t v = 0; v < projs.size(); ++v)
    if (m.dims == projs[v].dims && is_isomorphic(m, projs[v])) out.push_back("P" + std::to_string(v + 1));
  for (std::size_t v = 0; v < injs.size(); ++v)
    if (m.dims == injs[v].dims && is_isomorphic(m, injs[v])) out.push_back("I" + std::to_string(v + 1));
  return out;
}

}  // namespace

int Catalog::find_name(const std::string& raw) const {
  const std::string name = strip_underscores(raw);
  for (int i = 0; i < size(); ++i) {
    const auto& e = entries[(std::size_t)i];
    if (strip_underscores(e.name) == name || strip_underscores(e.label) == name) return i;
    for (const auto& a : e.aliases)
      if (strip_underscores(a) == name) return i;
  }
  return -1;
}

Catalog hereditary_catalog(Algebra::Ptr kq, const Quiver& q) {
  if (!kq->hereditary) throw std::invalid_argument("hereditary_catalog: algebra is not hereditary");
  if (!q.is_dynkin())
    throw std::domain_error("hereditary_catalog: quiver is not of Dynkin type; enumeration refused");
  const auto roots = q.positive_roots();

  Catalog cat;
  cat.alg = kq;
  std::vector<Module> projs, injs;
  for (int v = 0; v < q.vertices; ++v) {
    projs.push_back(projective_module(kq, v));
    injs.push_back(injective_module(kq, v));
  }
  // knit: tau^{-1}-orbits starting at each projective
  for (int v = 0; v < q.vertices; ++v) {
    Module cur = projs[(std::size_t)v];
    int prev = -1;
    for (;;) {
      CatalogEntry e;
      e.mod = cur;
      e.tau_prev = prev;
      cat.entries.push_back(e);
      const int here = cat.size() - 1;
      if (prev >= 0) cat.entries[(std::size_t)prev].tau_next = here;
      prev = here;
      Module next = tau_inverse(cur);
      if (next.is_zero()) break;  // cur is injective, orbit ends
      cur = next;
    }
  }
  if ((int)cat.entries.size() != (int)roots.size())
    throw std::logic_error("hereditary_catalog: knitting produced " + std::to_string(cat.entries.size()) +
                           " modules, expected " + std::to_string(roots.size()) + " positive roots");
  // dimension vectors must exhaust the positive roots
  std::multiset<std::vector<long>> found;
  for (const auto& e : cat.entries) found.insert(e.mod.dim_vector());
  std::multiset<std::vector<long>> expect(roots.begin(), roots.end());
  if (found != expect) throw std::logic_error("hereditary_catalog: dimension vectors do not match the root system");
  for (const auto& e : cat.entries)
    if (!is_indecomposable(e.mod)) throw std::logic_error("hereditary_catalog: knitted module not indecomposable");

  // names: S > P > I > dimension-vector tag, with a Hom-profile suffix when
  // two entries share a dimension vector
  std::map<std::string, std::vector<int>> by_tag;
  for (int i = 0; i < cat.size(); ++i) {
    auto& e = cat.entries[(std::size_t)i];
    auto names = standard_names(e.mod, projs, injs);
    if (!names.empty()) {
      e.label = names.front();
      e.name = e.label;
      e.aliases.assign(names.begin() + 1, names.end());
    } else {
      e.name = "X" + dims_tag(e.mod);
      by_tag[e.name].push_back(i);
      e.label = e.name;
    }
  }
  for (auto& [tag, idxs] : by_tag) {
    if (idxs.size() < 2) continue;
    // discriminate by the Hom-profile against the projectives
    std::vector<std::pair<std::vector<int>, int>> keyed;
    for (int i : idxs) {
      std::vector<int> profile;
      for (const auto& p : projs) profile.push_back(hom_dim(p, cat.entries[(std::size_t)i].mod));
      keyed.emplace_back(profile, i);
    }
    std::sort(keyed.begin(), keyed.end());
    char suffix = 'a';
    for (auto& [profile, i] : keyed) {
      cat.entries[(std::size_t)i].name += std::string(1, suffix);
      cat.entries[(std::size_t)i].label = cat.entries[(std::size_t)i].name;
      ++suffix;
    }
  }
  return cat;
}

Catalog induced_catalog(const TensorSetup& ts, const Catalog& hereditary) {
  Catalog cat;
  cat.alg = ts.lambda;
  std::vector<Module> projs, injs;
  for (int v = 0; v < ts.quiver.vertices; ++v) {
    projs.push_back(projective_module(ts.lambda, v));
    injs.push_back(injective_module(ts.lambda, v));
  }
  int anon = 0;
  std::vector<int> anon_entries;
  for (int i = 0; i < hereditary.size(); ++i) {
    CatalogEntry e;
    e.mod = induce(ts, hereditary.at(i).mod);
    e.name = "Ind(" + hereditary.at(i).name + ")";
    e.tau_next = hereditary.at(i).tau_next;
    e.tau_prev = hereditary.at(i).tau_prev;
    auto names = standard_names(e.mod, projs, injs);
    // projective-first display naming; simples over Lambda are not induced
    // so S-names cannot occur here
    std::vector<std::string> keep;
    for (const auto& n : names)
      if (n[0] != 'S') keep.push_back(n);
    std::stable_sort(keep.begin(), keep.end(), [](const std::string& a, const std::string& b) {
      return (a[0] == 'P') > (b[0] == 'P');
    });
    if (!keep.empty()) {
      e.label = keep.front();
      e.aliases.assign(keep.begin() + 1, keep.end());
    } else {
      e.label = "M";
      anon_entries.push_back(cat.size());
      ++anon;
    }
    e.aliases.push_back(e.name);
    cat.entries.push_back(std::move(e));
  }
  if (anon > 1)
    for (std::size_t k = 0; k < anon_entries.size(); ++k)
      cat.entries[(std::size_t)anon_entries[k]].label = "M" + std::to_string(k + 1);
  return cat;
}

Catalog catalog_for(const TensorSetup& ts) {
  Catalog h = hereditary_catalog(ts.kq, ts.quiver);
  if (ts.trivial()) return h;
  return induced_catalog(ts, h);
}

}  // namespace tauseq
