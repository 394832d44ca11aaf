#pragma once

// Generator words over O(n,n|Z):
//
//   word   := term (';' term)*            (the empty string is the empty word)
//   term   := 'sigma' '{' [int (',' int)*] '}'
//           | 'rho' matrix | 'nu' matrix | 'raw' matrix
//           | 'inv' '(' term ')'
//   matrix := '[' row (',' row)* ']'
//   row    := '[' rational (',' rational)* ']'
//   rational := int | int '/' int
//
// Whitespace is ignored between tokens. "t1;...;tk" evaluates to
// M(tk)···M(t1): the leftmost term is applied first.

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dtori/error.hpp"
#include "dtori/matrix.hpp"
#include "dtori/onn.hpp"
#include "dtori/rational.hpp"

namespace dtori {

struct Term {
  enum class Kind { Sigma, Rho, Nu, Raw, Inv };

  Kind kind = Kind::Sigma;
  std::vector<std::size_t> indices;  // Sigma, 1-based
  RationalMatrix matrix;             // Rho, Nu, Raw
  std::shared_ptr<const Term> inner;  // Inv

  static Term make_sigma(std::vector<std::size_t> idx) {
    Term t;
    t.kind = Kind::Sigma;
    t.indices = std::move(idx);
    return t;
  }
  static Term make_matrix(Kind kind, RationalMatrix m) {
    Term t;
    t.kind = kind;
    t.matrix = std::move(m);
    return t;
  }
  static Term make_inv(Term inner) {
    Term t;
    t.kind = Kind::Inv;
    t.inner = std::make_shared<const Term>(std::move(inner));
    return t;
  }
};

struct Word {
  std::vector<Term> terms;

  bool empty() const noexcept { return terms.empty(); }
  std::size_t size() const noexcept { return terms.size(); }
};

inline std::string to_string(const RationalMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ',';
    s += '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ',';
      s += m(i, j).get_str();
    }
    s += ']';
  }
  return s + ']';
}

inline std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Sigma: {
      std::string s = "sigma{";
      for (std::size_t k = 0; k < t.indices.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(t.indices[k]);
      }
      return s + '}';
    }
    case Term::Kind::Rho: return "rho" + to_string(t.matrix);
    case Term::Kind::Nu: return "nu" + to_string(t.matrix);
    case Term::Kind::Raw: return "raw" + to_string(t.matrix);
    case Term::Kind::Inv: return "inv(" + to_string(*t.inner) + ')';
  }
  return {};
}

inline std::string to_string(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.terms.size(); ++k) {
    if (k) s += ';';
    s += to_string(w.terms[k]);
  }
  return s;
}

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  Word parse() {
    Word w;
    skip_ws();
    if (at_end()) return w;
    w.terms.push_back(term());
    skip_ws();
    while (accept(';')) {
      w.terms.push_back(term());
      skip_ws();
    }
    if (!at_end()) error("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  [[noreturn]] void error(const std::string& what) const { throw ParseError(pos_, what); }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Integer integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (!at_end() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      error("expected integer");
    }
    Integer z;
    detail::parse_integer(text_.substr(start, pos_ - start), z);
    return z;
  }

  Rational rational() {
    const std::size_t start = pos_;
    Integer num = integer();
    Integer den = 1;
    if (accept('/')) {
      den = integer();
      if (den == 0) {
        pos_ = start;
        error("zero denominator");
      }
    }
    return rat(num, den);
  }

  RationalMatrix matrix() {
    expect('[');
    std::vector<std::vector<Rational>> rows;
    do {
      const std::size_t row_pos = pos_;
      expect('[');
      std::vector<Rational> row;
      do {
        row.push_back(rational());
      } while (accept(','));
      expect(']');
      if (!rows.empty() && row.size() != rows.front().size()) {
        pos_ = row_pos;
        error("ragged matrix row");
      }
      rows.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    return RationalMatrix::from_rows(rows);
  }

  Term term() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name == "sigma") {
      expect('{');
      std::vector<std::size_t> idx;
      skip_ws();
      if (!accept('}')) {
        do {
          const std::size_t at = pos_;
          const Integer z = integer();
          if (z < 1 || !z.fits_ulong_p()) {
            pos_ = at;
            error("sigma index must be a positive integer");
          }
          idx.push_back(z.get_ui());
        } while (accept(','));
        expect('}');
      }
      return Term::make_sigma(std::move(idx));
    }
    if (name == "rho") return Term::make_matrix(Term::Kind::Rho, matrix());
    if (name == "nu") return Term::make_matrix(Term::Kind::Nu, matrix());
    if (name == "raw") return Term::make_matrix(Term::Kind::Raw, matrix());
    if (name == "inv") {
      expect('(');
      Term inner = term();
      expect(')');
      return Term::make_inv(std::move(inner));
    }
    pos_ = start;
    error(name.empty() ? "expected a term" : "unknown generator '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Word parse_word(std::string_view text) { return detail::WordParser(text).parse(); }

inline GroupElement eval_term(const Term& t, std::size_t n) {
  switch (t.kind) {
    case Term::Kind::Sigma: return sigma(t.indices, n);
    case Term::Kind::Rho:
      require_dims(t.matrix.rows() == n && t.matrix.cols() == n,
                   "rho matrix must be " + std::to_string(n) + "x" + std::to_string(n));
      return rho(to_integer(t.matrix, ErrorCode::NotUnimodular));
    case Term::Kind::Nu:
      require_dims(t.matrix.rows() == n && t.matrix.cols() == n,
                   "nu matrix must be " + std::to_string(n) + "x" + std::to_string(n));
      return nu(to_integer(t.matrix, ErrorCode::NotSkew));
    case Term::Kind::Raw: return GroupElement::from_matrix(t.matrix, n);
    case Term::Kind::Inv: return eval_term(*t.inner, n).inverse();
  }
  return GroupElement::identity(n);
}

inline GroupElement eval_word(const Word& w, std::size_t n) {
  GroupElement g = GroupElement::identity(n);
  for (const auto& t : w.terms) g = eval_term(t, n) * g;
  return g;
}

inline GroupElement eval_word(std::string_view text, std::size_t n) {
  return eval_word(parse_word(text), n);
}

inline Word concat(const Word& first, const Word& then) {
  Word w = first;
  w.terms.insert(w.terms.end(), then.terms.begin(), then.terms.end());
  return w;
}

}  // namespace dtori
