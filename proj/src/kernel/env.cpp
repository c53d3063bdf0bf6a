#include "lbr/env.hpp"

#include "lbr/error.hpp"

namespace lbr {

void Env::claim(const std::string& name) {
  if (defines(name)) throw Error(ErrorCode::Parse, "name '" + name + "' is already defined");
}

void Env::define_term(const std::string& name, Term t) {
  if (!t.closed()) throw Error(ErrorCode::Type, "definition '" + name + "' is not closed");
  claim(name);
  terms_.emplace(name, std::move(t));
}

void Env::define_predicate(const std::string& name, Predicate p) {
  claim(name);
  predicates_.emplace(name, std::move(p));
}

void Env::define_realizer(NamedRealizer r) {
  claim(r.name);
  std::string name = r.name;
  realizers_.emplace(std::move(name), std::move(r));
}

const Term* Env::find_term(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? nullptr : &it->second;
}

std::optional<Predicate> Env::find_predicate(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) return std::nullopt;
  return it->second;
}

const NamedRealizer* Env::find_realizer(const std::string& name) const {
  auto it = realizers_.find(name);
  return it == realizers_.end() ? nullptr : &it->second;
}

bool Env::defines(const std::string& name) const {
  return terms_.count(name) || predicates_.count(name) || realizers_.count(name);
}

std::vector<std::string> Env::predicate_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : predicates_) out.push_back(name);
  return out;
}

std::vector<std::string> Env::realizer_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : realizers_) out.push_back(name);
  return out;
}

}  // namespace lbr
