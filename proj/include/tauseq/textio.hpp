#pragma once

#include "tauseq/module.hpp"

#include <string>

namespace tauseq {

/// Matrices serialize row-major, rows separated by ';', entries by ','.
/// Empty matrices serialize to the empty string.
std::string matrix_text(const Mat& m);
Mat matrix_parse(const std::string& text, Eigen::Index rows, Eigen::Index cols);

/// Module text format:
///   module <name> over <algebra-id>
///   dims = [d_1,...,d_n]
///   act <gen> = <matrix>
/// Round trips bit-exactly.
std::string module_text(const Module& m, const std::string& name, const std::string& algebra_id);
Module module_parse(const std::string& text, Algebra::Ptr alg, std::string* name_out = nullptr,
                    std::string* algebra_id_out = nullptr);

}  // namespace tauseq
