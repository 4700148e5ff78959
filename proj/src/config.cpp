#include "tauseq/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tauseq {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.quiver.vertices = -1;
  std::string section;
  std::string coeff_type;
  int truncation = -1;
  std::vector<std::string> basis_labels;
  std::map<std::pair<std::string, std::string>, std::string> mult_lines;

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      if (section != "quiver" && section != "coefficients") fail(lineno, "unknown section [" + section + "]");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section == "quiver") {
      if (key == "vertices") {
        cfg.quiver.vertices = std::stoi(value);
      } else if (key.rfind("arrow ", 0) == 0) {
        std::string name = trim(key.substr(6));
        auto arrow = value.find("->");
        if (arrow == std::string::npos) fail(lineno, "arrow needs the form i -> j");
        int src = std::stoi(trim(value.substr(0, arrow)));
        int tgt = std::stoi(trim(value.substr(arrow + 2)));
        if (cfg.quiver.vertices < 0) fail(lineno, "vertices must come before arrows");
        if (src < 1 || tgt < 1 || src > cfg.quiver.vertices || tgt > cfg.quiver.vertices)
          fail(lineno, "arrow endpoints out of range");
        cfg.quiver.arrows.push_back({name, src - 1, tgt - 1});
      } else {
        fail(lineno, "unknown quiver key '" + key + "'");
      }
    } else if (section == "coefficients") {
      if (key == "type") {
        coeff_type = value;
      } else if (key == "t") {
        truncation = std::stoi(value);
      } else if (key == "basis") {
        basis_labels = split(value, ',');
      } else if (key.rfind("mult ", 0) == 0) {
        std::string prod = trim(key.substr(5));
        auto star = prod.find('*');
        if (star == std::string::npos) fail(lineno, "mult key needs the form a*b");
        std::string a = trim(prod.substr(0, star)), b = trim(prod.substr(star + 1));
        mult_lines[{a, b}] = value;
      } else {
        fail(lineno, "unknown coefficients key '" + key + "'");
      }
    } else {
      fail(lineno, "content outside a section");
    }
  }
  if (cfg.quiver.vertices < 0) throw std::invalid_argument("config: missing [quiver] vertices");

  std::ostringstream id;
  id << "q" << cfg.quiver.vertices << "[";
  for (std::size_t a = 0; a < cfg.quiver.arrows.size(); ++a)
    id << (a ? "," : "") << cfg.quiver.arrows[a].name << ":" << cfg.quiver.arrows[a].source + 1 << ">"
       << cfg.quiver.arrows[a].target + 1;
  id << "]";

  if (coeff_type.empty() || coeff_type == "truncated_polynomial") {
    int t = truncation < 0 ? 1 : truncation;
    if (t < 1) throw std::invalid_argument("config: t must be at least 1");
    cfg.coeffs = LocalCoefficientAlgebra::truncated_polynomial(t);
    id << ";t=" << t;
  } else if (coeff_type == "structure_constants") {
    if (basis_labels.empty() || basis_labels[0] != "1")
      throw std::invalid_argument("config: structure constants need basis = 1,<radical labels>");
    const int d = (int)basis_labels.size();
    std::map<std::string, int> index;
    for (int i = 0; i < d; ++i) index[basis_labels[(std::size_t)i]] = i;
    Mat mult = Mat::Zero(d * d, d);
    for (int i = 0; i < d; ++i) {
      mult.row(0 * d + i) = Vec(Vec::Unit(d, i)).transpose();
      mult.row(i * d + 0) = Vec(Vec::Unit(d, i)).transpose();
    }
    auto parse_combo = [&](const std::string& value) {
      Vec v = Vec::Zero(d);
      if (trim(value) == "0") return v;
      for (const auto& term : split(value, '+')) {
        auto star = term.find('*');
        Rational coeff(1);
        std::string label = term;
        if (star != std::string::npos) {
          coeff = Rational::parse(trim(term.substr(0, star)));
          label = trim(term.substr(star + 1));
        }
        auto it = index.find(trim(label));
        if (it == index.end()) throw std::invalid_argument("config: unknown basis label '" + label + "'");
        v(it->second) += coeff;
      }
      return v;
    };
    std::vector<std::vector<bool>> given((std::size_t)d, std::vector<bool>(d, false));
    for (const auto& [pair, value] : mult_lines) {
      auto ia = index.find(pair.first);
      auto ib = index.find(pair.second);
      if (ia == index.end() || ib == index.end())
        throw std::invalid_argument("config: mult uses unknown basis label");
      if (ia->second == 0 || ib->second == 0)
        throw std::invalid_argument("config: products with the unit are implied");
      Vec v = parse_combo(value);
      mult.row(ia->second * d + ib->second) = v.transpose();
      mult.row(ib->second * d + ia->second) = v.transpose();
      given[(std::size_t)ia->second][(std::size_t)ib->second] = true;
      given[(std::size_t)ib->second][(std::size_t)ia->second] = true;
    }
    for (int i = 1; i < d; ++i)
      for (int j = i; j < d; ++j)
        if (!given[(std::size_t)i][(std::size_t)j])
          throw std::invalid_argument("config: missing mult " + basis_labels[(std::size_t)i] + "*" +
                                      basis_labels[(std::size_t)j]);
    cfg.coeffs = LocalCoefficientAlgebra::from_structure(basis_labels, mult);
    id << ";R[";
    for (int i = 0; i < d; ++i) id << (i ? "," : "") << basis_labels[(std::size_t)i];
    id << "]";
  } else {
    throw std::invalid_argument("config: unknown coefficient type '" + coeff_type + "'");
  }
  cfg.algebra_id = id.str();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

TensorSetup setup_from_config(const RunConfig& cfg) {
  return make_tensor_setup(cfg.algebra_id, cfg.coeffs, cfg.quiver);
}

}  // namespace tauseq
