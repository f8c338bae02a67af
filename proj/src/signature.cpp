#include "affina/signature.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace affina {

Signature::Signature(std::vector<OpSymbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> names;
  for (auto const& s : symbols_) {
    if (s.arity < 0) {
      throw std::invalid_argument("signature: arity of \"" + s.name + "\" is negative");
    }
    if (!names.insert(s.name).second) {
      throw std::invalid_argument("signature: duplicate symbol \"" + s.name + "\"");
    }
  }
}

int Signature::index_of(std::string const& name) const {
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

int Signature::max_arity() const {
  int m = 0;
  for (auto const& s : symbols_) {
    m = std::max(m, s.arity);
  }
  return m;
}

Term Term::var(int index) {
  if (index < 0) {
    throw std::invalid_argument("term: negative variable index");
  }
  Term t;
  t.var_ = index;
  return t;
}

Term Term::app(int symbol, std::vector<Term> args) {
  Term t;
  t.symbol_ = symbol;
  t.args_   = std::move(args);
  return t;
}

int Term::max_var() const {
  if (is_var()) {
    return var_;
  }
  int m = -1;
  for (auto const& a : args_) {
    m = std::max(m, a.max_var());
  }
  return m;
}

void Term::collect_vars(std::vector<bool>& seen) const {
  if (is_var()) {
    if (var_ >= static_cast<int>(seen.size())) {
      seen.resize(var_ + 1, false);
    }
    seen[var_] = true;
    return;
  }
  for (auto const& a : args_) {
    a.collect_vars(seen);
  }
}

namespace {

struct Parser {
  std::string const& text;
  Signature const&   sig;
  size_t             pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  [[noreturn]] void fail(std::string const& msg) const {
    throw std::invalid_argument("term parse error at position " + std::to_string(pos) + ": "
                                + msg + " in \"" + text + "\"");
  }

  std::string next_name() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ','
           && !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == start) {
      fail("expected a symbol or variable");
    }
    return text.substr(start, pos - start);
  }

  Term parse_term() {
    std::string name = next_name();
    if (name.size() >= 2 && name[0] == 'x'
        && std::all_of(name.begin() + 1, name.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return Term::var(std::stoi(name.substr(1)));
    }
    int sym = sig.index_of(name);
    if (sym < 0) {
      fail("unknown symbol \"" + name + "\"");
    }
    int arity = sig[sym].arity;
    skip_ws();
    std::vector<Term> args;
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
      } else {
        while (true) {
          args.push_back(parse_term());
          skip_ws();
          if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < text.size() && text[pos] == ')') {
            ++pos;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    } else if (arity != 0) {
      fail("symbol \"" + name + "\" expects " + std::to_string(arity) + " argument(s)");
    }
    if (static_cast<int>(args.size()) != arity) {
      fail("symbol \"" + name + "\" expects " + std::to_string(arity) + " argument(s), got "
           + std::to_string(args.size()));
    }
    return Term::app(sym, std::move(args));
  }
};

}  // namespace

Term Term::parse(std::string const& text, Signature const& sig) {
  Parser p{text, sig};
  Term   t = p.parse_term();
  p.skip_ws();
  if (p.pos != text.size()) {
    p.fail("trailing input");
  }
  return t;
}

std::string Term::str(Signature const& sig) const {
  if (is_var()) {
    return "x" + std::to_string(var_);
  }
  std::string out = sig[symbol_].name;
  if (!args_.empty()) {
    out += "(";
    for (size_t i = 0; i < args_.size(); ++i) {
      if (i > 0) {
        out += ",";
      }
      out += args_[i].str(sig);
    }
    out += ")";
  }
  return out;
}

int Identity::num_vars() const {
  return std::max(lhs.max_var(), rhs.max_var()) + 1;
}

std::string Identity::str(Signature const& sig) const {
  return lhs.str(sig) + " = " + rhs.str(sig);
}

}  // namespace affina
