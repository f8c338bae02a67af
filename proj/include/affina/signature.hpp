#ifndef AFFINA_SIGNATURE_HPP_
#define AFFINA_SIGNATURE_HPP_

#include <string>
#include <vector>

namespace affina {

struct OpSymbol {
  std::string name;
  int arity;

  bool operator==(OpSymbol const& other) const = default;
};

// A finite operational signature: a list of named symbols with arities.
// Symbol order is significant; tables and cocycles are stored in this order.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> symbols);

  size_t size() const {
    return symbols_.size();
  }
  OpSymbol const& operator[](size_t i) const {
    return symbols_[i];
  }
  std::vector<OpSymbol> const& symbols() const {
    return symbols_;
  }
  // Index of the symbol with the given name, or -1.
  int index_of(std::string const& name) const;
  int max_arity() const;

  bool operator==(Signature const& other) const = default;

 private:
  std::vector<OpSymbol> symbols_;
};

// A term over a signature: either a variable x0, x1, ... or an application
// of a symbol to subterms.
class Term {
 public:
  static Term var(int index);
  static Term app(int symbol, std::vector<Term> args = {});

  bool is_var() const {
    return var_ >= 0;
  }
  int var_index() const {
    return var_;
  }
  int symbol() const {
    return symbol_;
  }
  std::vector<Term> const& args() const {
    return args_;
  }
  // Largest variable index occurring, or -1 for a closed term.
  int max_var() const;
  void collect_vars(std::vector<bool>& seen) const;

  // Concrete syntax: "x3" for variables, "name(arg, ...)" for applications;
  // a bare symbol name is accepted for nullary symbols.
  static Term parse(std::string const& text, Signature const& sig);
  std::string str(Signature const& sig) const;

 private:
  Term() = default;
  int var_    = -1;
  int symbol_ = -1;
  std::vector<Term> args_;
};

// An identity lhs = rhs between terms over a common signature.
struct Identity {
  Term lhs;
  Term rhs;

  // 1 + the largest variable index used on either side.
  int num_vars() const;
  std::string str(Signature const& sig) const;
};

}  // namespace affina

#endif  // AFFINA_SIGNATURE_HPP_
