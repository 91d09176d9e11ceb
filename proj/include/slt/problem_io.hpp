#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slt/model.hpp"

namespace slt {

/// Parses the sectioned key = value problem format:
///
///   [domain]        a, c, b
///   [equation]      p_minus, p_plus, q_minus_poly, q_plus_poly (c0 c1 c2 ... in x)
///                   or q_minus, q_plus (constants)
///   [bc_left]       alpha10 alpha11 alpha10p alpha11p
///   [bc_right]      alpha20 alpha21 alpha20p alpha21p
///   [transmission]  row1, row2 (four reals each)
///   [options]       strict = true|false
///
/// A boundary section may also hold one bare line of four numbers and the
/// transmission section two bare lines. '#' and ';' start comments. Missing
/// coefficients default to 0, a missing transmission section to continuity.
ProblemSpec parse_problem(std::string_view text);

ProblemSpec read_problem_file(const std::string& path);

std::vector<std::string> builtin_names();

/// Problem-file text of a built-in, if `name` is one.
std::optional<std::string_view> builtin_text(std::string_view name);

/// Built-in name or file path, validated. `strict` forces strict mode on.
ValidatedProblem load_problem(const std::string& name_or_path, bool strict = false);

/// Horner evaluation of c0 + c1 x + c2 x^2 + ...
Potential polynomial(std::vector<double> coeffs);

}  // namespace slt
