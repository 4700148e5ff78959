#include "tauseq/textio.hpp"

#include <sstream>
#include <stdexcept>

namespace tauseq {

std::string matrix_text(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return "";
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ";";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ",";
      os << m(i, j).str();
    }
  }
  return os.str();
}

Mat matrix_parse(const std::string& text, Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  if (rows == 0 || cols == 0) {
    if (!text.empty()) throw std::invalid_argument("matrix_parse: nonempty text for an empty matrix");
    return m;
  }
  std::istringstream rs(text);
  std::string row;
  Eigen::Index i = 0;
  while (std::getline(rs, row, ';')) {
    if (i >= rows) throw std::invalid_argument("matrix_parse: too many rows");
    std::istringstream cs(row);
    std::string cell;
    Eigen::Index j = 0;
    while (std::getline(cs, cell, ',')) {
      if (j >= cols) throw std::invalid_argument("matrix_parse: too many columns");
      m(i, j++) = Rational::parse(cell);
    }
    if (j != cols) throw std::invalid_argument("matrix_parse: short row");
    ++i;
  }
  if (i != rows) throw std::invalid_argument("matrix_parse: short matrix");
  return m;
}

std::string module_text(const Module& m, const std::string& name, const std::string& algebra_id) {
  std::ostringstream os;
  os << "module " << name << " over " << algebra_id << "\n";
  os << "dims = [";
  for (std::size_t v = 0; v < m.dims.size(); ++v) os << (v ? "," : "") << m.dims[v];
  os << "]\n";
  for (std::size_t g = 0; g < m.alg->gens.size(); ++g)
    os << "act " << m.alg->gens[g].name << " = " << matrix_text(m.act[g]) << "\n";
  return os.str();
}

Module module_parse(const std::string& text, Algebra::Ptr alg, std::string* name_out,
                    std::string* algebra_id_out) {
  std::istringstream is(text);
  std::string line;
  Module m;
  m.alg = alg;
  m.act.resize(alg->gens.size());
  std::vector<bool> seen(alg->gens.size(), false);
  bool have_header = false, have_dims = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("module ", 0) == 0) {
      auto over = line.find(" over ");
      if (over == std::string::npos) throw std::invalid_argument("module_parse: bad header");
      if (name_out) *name_out = line.substr(7, over - 7);
      if (algebra_id_out) *algebra_id_out = line.substr(over + 6);
      have_header = true;
    } else if (line.rfind("dims = [", 0) == 0) {
      auto close = line.find(']');
      if (close == std::string::npos) throw std::invalid_argument("module_parse: bad dims line");
      std::istringstream ds(line.substr(8, close - 8));
      std::string cell;
      while (std::getline(ds, cell, ',')) m.dims.push_back(std::stoi(cell));
      if ((int)m.dims.size() != alg->verts)
        throw std::invalid_argument("module_parse: dims length does not match the algebra");
      have_dims = true;
    } else if (line.rfind("act ", 0) == 0) {
      auto eq = line.find(" = ");
      if (eq == std::string::npos) throw std::invalid_argument("module_parse: bad act line");
      std::string gen = line.substr(4, eq - 4);
      int gidx = alg->generator_index(gen);
      if (gidx < 0) throw std::invalid_argument("module_parse: unknown generator '" + gen + "'");
      if (!have_dims) throw std::invalid_argument("module_parse: act before dims");
      m.act[(std::size_t)gidx] =
          matrix_parse(line.substr(eq + 3), m.dims[(std::size_t)alg->gens[(std::size_t)gidx].target],
                       m.dims[(std::size_t)alg->gens[(std::size_t)gidx].source]);
      seen[(std::size_t)gidx] = true;
    } else {
      throw std::invalid_argument("module_parse: unrecognized line '" + line + "'");
    }
  }
  if (!have_header || !have_dims) throw std::invalid_argument("module_parse: missing header or dims");
  for (std::size_t g = 0; g < seen.size(); ++g)
    if (!seen[g]) throw std::invalid_argument("module_parse: missing action for " + alg->gens[g].name);
  validate_module(m);
  return m;
}

}  // namespace tauseq
