#pragma once

#include <string>
#include <string_view>

#include "fovkit/calculus.hpp"
#include "fovkit/linalg.hpp"

namespace fov {

// Text formats shared by the command-line tool and the verification reports.
//
// Complex literal:  re, imi or re+imi / re-imi, e.g. `0.5`, `-2i`, `1e-3-0.25i`.
//                   Parsing never consults the locale.
// Matrix file:      `dim n` on the first line, then n rows of n complex
//                   literals separated by whitespace. Blank lines and lines
//                   starting with '#' are ignored.
// Function expr:    prefix notation
//                     poly c0 c1 ...            c0 + c1 z + ...
//                     mobius a b c d            (a + b z) / (c + d z)
//                     blaschke c a1 a2 ...      c prod (a_k - z) / (1 - conj(a_k) z)
//                     compose ( outer ) ( inner )
//                     scale rho ( inner )       inner(rho z)

/// Shortest round-trip form, 17 significant digits at most.
std::string format_real(double x);
/// Fixed count of significant digits (printf %.<digits>g without locale).
std::string format_significant(double x, int digits);
std::string format_complex(Complex z);

/// Throws Error(InvalidArgument) on malformed or non-finite input.
Complex parse_complex(std::string_view token);

std::string format_matrix(const CMatrix& m);
/// Throws ParseError with the line/column of the offending token.
CMatrix parse_matrix(std::string_view text);

/// One-line variant of the matrix file with rows separated by " ; ".
std::string format_matrix_inline(const CMatrix& m);
CMatrix parse_matrix_inline(std::string_view text);

std::string format_function(const DiskFunction& f);
/// Throws ParseError (line 1, column of the offending token).
DiskFunction parse_function(std::string_view text);

}  // namespace fov
