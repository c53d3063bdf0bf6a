#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lbr/formula.hpp"
#include "lbr/predicate.hpp"
#include "lbr/term.hpp"

namespace lbr {

// A realizer registered under a name together with the formula it realizes.
struct NamedRealizer {
  std::string name;
  std::string builder;  // e.g. "(em1 lt)"
  Formula formula;
  Term term;
};

// Named definitions visible to the parser: closed terms, predicates and
// realizers. Names share one namespace.
class Env {
 public:
  void define_term(const std::string& name, Term t);
  void define_predicate(const std::string& name, Predicate p);
  void define_realizer(NamedRealizer r);

  const Term* find_term(const std::string& name) const;
  std::optional<Predicate> find_predicate(const std::string& name) const;
  const NamedRealizer* find_realizer(const std::string& name) const;
  bool defines(const std::string& name) const;

  std::vector<std::string> predicate_names() const;
  std::vector<std::string> realizer_names() const;

 private:
  void claim(const std::string& name);

  std::map<std::string, Term> terms_;
  std::map<std::string, Predicate> predicates_;
  std::map<std::string, NamedRealizer> realizers_;
};

}  // namespace lbr
