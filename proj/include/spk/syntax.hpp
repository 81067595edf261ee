#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "spk/logic.hpp"

namespace spk {

// ASCII grammar, scoped per logic:
//   atoms        [A-Za-z][A-Za-z0-9_]*
//   classical    ~A  A&B  A|B  A->B
//   mll          A^ (postfix)  A*B  A@B  A-oB
//   mill         A*B  A-oB
//   l            A/B  A\B  A.B   ('.' binds looser than the slashes)
//   nl           A/B  A\B, antecedent written as nested pairs (X , Y)
// Binary connectives are non-associative: nesting at the same precedence
// level needs explicit parentheses.  Unaries bind tightest.  Turnstile `=>`.

namespace detail {

enum class Tok {
  Ident, LParen, RParen, Comma, Turnstile,
  Tilde, Amp, Pipe, Arrow, Caret, Star, At, Lolli, Slash, Backslash, Dot,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto push = [&](Tok k, size_t start, size_t end) {
    out.push_back(Token{k, s.substr(start, end - start), SourceSpan{start, end}});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i + 1;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      push(Tok::Ident, i, j);
      i = j;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, i, i + 1); ++i; break;
      case ')': push(Tok::RParen, i, i + 1); ++i; break;
      case ',': push(Tok::Comma, i, i + 1); ++i; break;
      case '~': push(Tok::Tilde, i, i + 1); ++i; break;
      case '&': push(Tok::Amp, i, i + 1); ++i; break;
      case '|': push(Tok::Pipe, i, i + 1); ++i; break;
      case '^': push(Tok::Caret, i, i + 1); ++i; break;
      case '*': push(Tok::Star, i, i + 1); ++i; break;
      case '@': push(Tok::At, i, i + 1); ++i; break;
      case '/': push(Tok::Slash, i, i + 1); ++i; break;
      case '\\': push(Tok::Backslash, i, i + 1); ++i; break;
      case '.': push(Tok::Dot, i, i + 1); ++i; break;
      case '=':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          push(Tok::Turnstile, i, i + 2);
          i += 2;
          break;
        }
        throw SyntaxError(SourceSpan{i, i + 1}, "'=>'");
      case '-':
        if (i + 1 < s.size() && s[i + 1] == 'o') {
          push(Tok::Lolli, i, i + 2);
          i += 2;
          break;
        }
        if (i + 1 < s.size() && s[i + 1] == '>') {
          push(Tok::Arrow, i, i + 2);
          i += 2;
          break;
        }
        throw SyntaxError(SourceSpan{i, i + 1}, "'->' or '-o'");
      default:
        throw SyntaxError(SourceSpan{i, i + 1}, "a formula token");
    }
  }
  out.push_back(Token{Tok::End, "", SourceSpan{s.size(), s.size()}});
  return out;
}

inline bool is_binary_tok(Tok k) {
  switch (k) {
    case Tok::Amp:
    case Tok::Pipe:
    case Tok::Arrow:
    case Tok::Star:
    case Tok::At:
    case Tok::Lolli:
    case Tok::Slash:
    case Tok::Backslash:
    case Tok::Dot:
      return true;
    default:
      return false;
  }
}

inline Conn binary_conn(Tok k) {
  switch (k) {
    case Tok::Amp: return Conn::And;
    case Tok::Pipe: return Conn::Or;
    case Tok::Arrow: return Conn::Impl;
    case Tok::Star: return Conn::Tensor;
    case Tok::At: return Conn::Par;
    case Tok::Lolli: return Conn::Lolli;
    case Tok::Slash: return Conn::Over;
    case Tok::Backslash: return Conn::Under;
    default: return Conn::Prod;
  }
}

class Parser {
 public:
  Parser(std::vector<Token> toks, LogicId logic) : toks_(std::move(toks)), logic_(logic) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  void expect(Tok k, const char* what) {
    if (!at(k)) throw SyntaxError(peek().span, what);
    ++pos_;
  }

  void require_conn(Conn c, const Token& t) const {
    if (!connective_allowed(logic_, c))
      throw IllegalConnective(std::string("connective '") + t.text + "' is not part of logic " +
                              logic_name(logic_));
  }

  Formula parse_formula() {
    // In L the product is a separate, looser precedence level so that
    // C.(C\A)/B reads as C.((C\A)/B).
    Formula lhs = parse_slash_level();
    if (at(Tok::Dot)) {
      Token t = next();
      require_conn(Conn::Prod, t);
      Formula rhs = parse_slash_level();
      lhs = Formula::binary(Conn::Prod, lhs, rhs);
      if (at(Tok::Dot)) throw SyntaxError(peek().span, "parentheses (product is non-associative)");
    }
    return lhs;
  }

  Formula parse_slash_level() {
    Formula lhs = parse_unary();
    if (is_binary_tok(peek().kind) && peek().kind != Tok::Dot) {
      Token t = next();
      Conn c = binary_conn(t.kind);
      require_conn(c, t);
      Formula rhs = parse_unary();
      lhs = Formula::binary(c, lhs, rhs);
      if (is_binary_tok(peek().kind) && peek().kind != Tok::Dot)
        throw SyntaxError(peek().span, "parentheses (binary connectives are non-associative)");
    }
    return lhs;
  }

  Formula parse_unary() {
    if (at(Tok::Tilde)) {
      Token t = next();
      require_conn(Conn::Neg, t);
      return Formula::unary(Conn::Neg, parse_unary());
    }
    Formula f = parse_primary();
    while (at(Tok::Caret)) {
      Token t = next();
      require_conn(Conn::LinNeg, t);
      f = Formula::unary(Conn::LinNeg, f);
    }
    return f;
  }

  Formula parse_primary() {
    if (at(Tok::Ident)) return Formula::atom(next().text);
    if (at(Tok::LParen)) {
      next();
      Formula f = parse_formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    throw SyntaxError(peek().span, "an atom or '('");
  }

  // NL antecedents: '(' opens a structural pair when a top-level comma
  // follows before the matching ')', otherwise it is formula grouping.
  StructTree parse_nl_struct() {
    if (at(Tok::LParen) && paren_has_toplevel_comma()) {
      expect(Tok::LParen, "'('");
      StructTree l = parse_nl_struct();
      expect(Tok::Comma, "','");
      StructTree r = parse_nl_struct();
      expect(Tok::RParen, "')'");
      return StructTree::pair(l, r);
    }
    return StructTree::leaf(parse_formula());
  }

  bool paren_has_toplevel_comma() const {
    int depth = 0;
    for (size_t i = pos_; i < toks_.size(); ++i) {
      switch (toks_[i].kind) {
        case Tok::LParen: ++depth; break;
        case Tok::RParen:
          --depth;
          if (depth == 0) return false;
          break;
        case Tok::Comma:
          if (depth == 1) return true;
          break;
        case Tok::End: return false;
        default: break;
      }
    }
    return false;
  }

  std::vector<Formula> parse_formula_list(Tok stop1, Tok stop2) {
    std::vector<Formula> out;
    if (at(stop1) || at(stop2)) return out;
    out.push_back(parse_formula());
    while (at(Tok::Comma)) {
      next();
      out.push_back(parse_formula());
    }
    return out;
  }

  Sequent parse_sequent() {
    Sequent s;
    s.logic = logic_;
    if (logic_ == LogicId::NL) {
      if (at(Tok::Turnstile))
        throw EmptyAntecedent("NL sequents require a nonempty antecedent");
      s.ant_tree = parse_nl_struct();
      expect(Tok::Turnstile, "'=>'");
      s.succ.push_back(parse_formula());
    } else {
      s.ant = parse_formula_list(Tok::Turnstile, Tok::End);
      expect(Tok::Turnstile, "'=>'");
      s.succ = parse_formula_list(Tok::End, Tok::End);
    }
    expect(Tok::End, "end of input");
    s.validate();
    return s;
  }

 private:
  std::vector<Token> toks_;
  LogicId logic_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(const std::string& text, LogicId logic) {
  detail::Parser p(detail::lex(text), logic);
  Formula f = p.parse_formula();
  p.expect(detail::Tok::End, "end of input");
  f.check_logic(logic);
  return f;
}

inline Sequent parse_sequent(const std::string& text, LogicId logic) {
  detail::Parser p(detail::lex(text), logic);
  return p.parse_sequent();
}

// Canonical printing: compounds are fully parenthesized except the outermost.
inline void print_formula_to(const Formula& f, std::string& out, bool outer = true);

inline void print_wrapped(const Formula& f, std::string& out) {
  if (f.is_atom()) {
    out += f.name();
  } else {
    out += '(';
    print_formula_to(f, out, true);
    out += ')';
  }
}

inline void print_formula_to(const Formula& f, std::string& out, bool) {
  switch (f.conn()) {
    case Conn::Atom: out += f.name(); return;
    case Conn::Neg:
      out += '~';
      print_wrapped(f.left(), out);
      return;
    case Conn::LinNeg:
      print_wrapped(f.left(), out);
      out += '^';
      return;
    default:
      print_wrapped(f.left(), out);
      out += conn_token(f.conn());
      print_wrapped(f.right(), out);
      return;
  }
}

inline std::string print_formula(const Formula& f) {
  std::string out;
  print_formula_to(f, out);
  return out;
}

inline std::string print_struct_tree(const StructTree& t) {
  if (t.is_leaf()) return print_formula(t.formula());
  return "(" + print_struct_tree(t.left()) + " , " + print_struct_tree(t.right()) + ")";
}

inline std::string print_sequent(const Sequent& s) {
  std::string out;
  if (s.logic == LogicId::NL) {
    out += print_struct_tree(s.ant_tree);
  } else {
    for (size_t i = 0; i < s.ant.size(); ++i) {
      if (i) out += ", ";
      out += print_formula(s.ant[i]);
    }
  }
  if (!out.empty()) out += ' ';
  out += "=>";
  for (size_t i = 0; i < s.succ.size(); ++i) {
    out += (i ? ", " : " ");
    out += print_formula(s.succ[i]);
  }
  return out;
}

}  // namespace spk
