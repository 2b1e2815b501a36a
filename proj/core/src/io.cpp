#include "fovkit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <system_error>
#include <vector>

#include "fovkit/errors.hpp"

namespace fov {

namespace {

double parse_real_part(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty() || text.front() == '+') {
    throw Error(ErrorCode::InvalidArgument, "malformed complex literal '" + std::string(whole) + "'");
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "malformed complex literal '" + std::string(whole) + "'");
  }
  return value;
}

double parse_imaginary_part(std::string_view text, std::string_view whole) {
  if (text == "+" || text.empty()) return 1.0;
  if (text == "-") return -1.0;
  return parse_real_part(text, whole);
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char ch = line[i];
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      ++i;
    } else if (ch == '(' || ch == ')') {
      tokens.push_back({line.substr(i, 1), i + 1});
      ++i;
    } else {
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '\n' &&
             line[i] != '(' && line[i] != ')') {
        ++i;
      }
      tokens.push_back({line.substr(start, i - start), start + 1});
    }
  }
  return tokens;
}

class FunctionParser {
 public:
  explicit FunctionParser(std::string_view text) : tokens_(tokenize(text)), end_column_(text.size() + 1) {}

  DiskFunction parse() {
    DiskFunction f = expression();
    if (pos_ != tokens_.size()) fail(tokens_[pos_].column, "unexpected trailing token '" + std::string(tokens_[pos_].text) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(std::size_t column, const std::string& what) const { throw ParseError(1, column, what); }

  bool at_end() const { return pos_ >= tokens_.size(); }
  std::size_t column() const { return at_end() ? end_column_ : tokens_[pos_].column; }
  bool next_is_close() const { return !at_end() && tokens_[pos_].text == ")"; }

  const Token& take(const char* expected) {
    if (at_end()) fail(end_column_, std::string("expected ") + expected + ", found end of input");
    return tokens_[pos_++];
  }

  void expect(std::string_view symbol) {
    const Token& tok = take(std::string(symbol).c_str());
    if (tok.text != symbol) fail(tok.column, "expected '" + std::string(symbol) + "', found '" + std::string(tok.text) + "'");
  }

  Complex literal() {
    const Token& tok = take("complex literal");
    try {
      return parse_complex(tok.text);
    } catch (const Error& e) {
      fail(tok.column, e.what());
    }
  }

  std::vector<Complex> literal_list() {
    std::vector<Complex> values;
    while (!at_end() && !next_is_close()) values.push_back(literal());
    return values;
  }

  DiskFunction parenthesized() {
    expect("(");
    DiskFunction f = expression();
    expect(")");
    return f;
  }

  DiskFunction expression() {
    const Token& head = take("function keyword");
    const std::size_t col = head.column;
    try {
      if (head.text == "poly") {
        auto coefficients = literal_list();
        if (coefficients.empty()) fail(column(), "poly needs at least one coefficient");
        return DiskFunction::polynomial(std::move(coefficients));
      }
      if (head.text == "mobius") {
        const Complex a = literal();
        const Complex b = literal();
        const Complex c = literal();
        const Complex d = literal();
        return DiskFunction::mobius(a, b, c, d);
      }
      if (head.text == "blaschke") {
        const Complex c = literal();
        auto zeros = literal_list();
        if (zeros.empty()) fail(column(), "blaschke needs at least one zero");
        return DiskFunction::blaschke(BlaschkeProduct(c, std::move(zeros)));
      }
      if (head.text == "compose") {
        DiskFunction outer = parenthesized();
        DiskFunction inner = parenthesized();
        return DiskFunction::compose(std::move(outer), std::move(inner));
      }
      if (head.text == "scale") {
        const std::size_t rho_col = column();
        const Complex rho = literal();
        if (rho.imag() != 0.0) fail(rho_col, "scale factor must be real");
        DiskFunction inner = parenthesized();
        return DiskFunction::scale(rho.real(), std::move(inner));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(col, e.what());
    }
    fail(col, "unknown function keyword '" + std::string(head.text) + "'");
  }

  std::vector<Token> tokens_;
  std::size_t end_column_;
  std::size_t pos_ = 0;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string format_real(double x) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, ec == std::errc{} ? ptr : buffer);
}

std::string format_significant(double x, int digits) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x, std::chars_format::general, digits);
  return std::string(buffer, ec == std::errc{} ? ptr : buffer);
}

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  const double im = z.imag();
  if (std::signbit(im)) {
    out += '-';
    out += format_real(-im);
  } else {
    out += '+';
    out += format_real(im);
  }
  out += 'i';
  return out;
}

Complex parse_complex(std::string_view token) {
  if (token.empty()) throw Error(ErrorCode::InvalidArgument, "empty complex literal");
  if (token.back() != 'i') return {parse_real_part(token, token), 0.0};

  const std::string_view body = token.substr(0, token.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = 1; k < body.size(); ++k) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') split = k;
  }
  if (split == std::string_view::npos) return {0.0, parse_imaginary_part(body, token)};
  return {parse_real_part(body.substr(0, split), token), parse_imaginary_part(body.substr(split), token)};
}

std::string format_matrix(const CMatrix& m) {
  std::string out = "dim " + std::to_string(m.dim()) + "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j > 0) out += ' ';
      out += format_complex(m(i, j));
    }
    out += '\n';
  }
  return out;
}

CMatrix parse_matrix(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::vector<Complex> entries;
  std::size_t rows_read = 0;
  std::size_t last_line = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    const std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;

    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().text.front() == '#') continue;
    last_line = line_no;

    if (dim == 0) {
      if (tokens.front().text != "dim") throw ParseError(line_no, tokens.front().column, "expected 'dim n' header");
      if (tokens.size() != 2) throw ParseError(line_no, tokens.front().column, "header must be exactly 'dim n'");
      const auto& tok = tokens[1];
      const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), dim);
      if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || dim == 0) {
        throw ParseError(line_no, tok.column, "dimension must be a positive integer");
      }
      entries.reserve(dim * dim);
      continue;
    }
    if (rows_read == dim) throw ParseError(line_no, tokens.front().column, "more than " + std::to_string(dim) + " rows");
    if (tokens.size() != dim) {
      const std::size_t col = tokens.size() > dim ? tokens[dim].column : line.size() + 1;
      throw ParseError(line_no, col, "expected " + std::to_string(dim) + " entries, found " + std::to_string(tokens.size()));
    }
    for (const auto& tok : tokens) {
      try {
        entries.push_back(parse_complex(tok.text));
      } catch (const Error& e) {
        throw ParseError(line_no, tok.column, e.what());
      }
    }
    ++rows_read;
  }
  if (dim == 0) throw ParseError(line_no, 1, "missing 'dim n' header");
  if (rows_read != dim) {
    throw ParseError(last_line + 1, 1, "expected " + std::to_string(dim) + " rows, found " + std::to_string(rows_read));
  }
  return CMatrix(dim, std::move(entries));
}

std::string format_matrix_inline(const CMatrix& m) {
  std::string out = "dim " + std::to_string(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out += " ;";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      out += ' ';
      out += format_complex(m(i, j));
    }
  }
  return out;
}

CMatrix parse_matrix_inline(std::string_view text) {
  std::string lines(text);
  for (auto& ch : lines) {
    if (ch == ';') ch = '\n';
  }
  return parse_matrix(lines);
}

std::string format_function(const DiskFunction& f) {
  return std::visit(
      Overloaded{
          [](const DiskFunction::Polynomial& p) {
            std::string out = "poly";
            for (const auto& c : p.coefficients) out += ' ' + format_complex(c);
            return out;
          },
          [](const DiskFunction::Mobius& m) {
            return "mobius " + format_complex(m.a) + ' ' + format_complex(m.b) + ' ' + format_complex(m.c) + ' ' +
                   format_complex(m.d);
          },
          [](const DiskFunction::Blaschke& b) {
            std::string out = "blaschke " + format_complex(b.product.constant());
            for (const auto& a : b.product.zeros()) out += ' ' + format_complex(a);
            return out;
          },
          [](const DiskFunction::Compose& c) {
            return "compose ( " + format_function(c.outer) + " ) ( " + format_function(c.inner) + " )";
          },
          [](const DiskFunction::Scale& s) { return "scale " + format_real(s.rho) + " ( " + format_function(s.inner) + " )"; },
      },
      f.node());
}

DiskFunction parse_function(std::string_view text) { return FunctionParser(text).parse(); }

}  // namespace fov
