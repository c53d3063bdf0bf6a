#include <sstream>

#include "lbr/error.hpp"
#include "lbr/strategy.hpp"

namespace lbr {

RandomAbelard::RandomAbelard(std::uint64_t seed, Numeral range)
    : seed_(seed), range_(range == 0 ? 1 : range), rng_(seed) {}

std::optional<Choice> RandomAbelard::choose(const Play& play) {
  if (play.last().is_quantifier()) {
    std::uniform_int_distribution<Numeral> dist(0, range_ - 1);
    return Choice::numeral(dist(rng_));
  }
  std::uniform_int_distribution<int> coin(0, 1);
  return coin(rng_) == 0 ? Choice::left() : Choice::right();
}

std::string RandomAbelard::describe() const {
  return "random:" + std::to_string(seed_) + ":" + std::to_string(range_);
}

ScriptedAbelard::ScriptedAbelard(std::vector<Choice> script) : script_(std::move(script)) {}

std::optional<Choice> ScriptedAbelard::choose(const Play&) {
  if (next_ >= script_.size()) return std::nullopt;
  return script_[next_++];
}

std::string ScriptedAbelard::describe() const {
  std::string s = "scripted:";
  for (std::size_t i = 0; i < script_.size(); ++i) {
    if (i) s += ',';
    s += to_string(script_[i]);
  }
  return s;
}

CallbackAbelard::CallbackAbelard(Callback cb, std::string name) : cb_(std::move(cb)), name_(std::move(name)) {}

std::optional<Choice> CallbackAbelard::choose(const Play& play) { return cb_(play); }

std::string CallbackAbelard::describe() const { return name_; }

bool bounded_truth(const Formula& f, Numeral range, const EvalOptions& opts) {
  switch (f.kind()) {
    case FormulaKind::Atom: return eval_atom(f, {}, opts);
    case FormulaKind::And: return bounded_truth(f.left(), range, opts) && bounded_truth(f.right(), range, opts);
    case FormulaKind::Or: return bounded_truth(f.left(), range, opts) || bounded_truth(f.right(), range, opts);
    case FormulaKind::Imp: return !bounded_truth(f.left(), range, opts) || bounded_truth(f.right(), range, opts);
    case FormulaKind::Forall:
      for (Numeral n = 0; n < range; ++n) {
        if (!bounded_truth(instantiate(f, n), range, opts)) return false;
      }
      return true;
    case FormulaKind::Exists:
      for (Numeral n = 0; n < range; ++n) {
        if (bounded_truth(instantiate(f, n), range, opts)) return true;
      }
      return false;
  }
  return false;
}

RefuterAbelard::RefuterAbelard(Numeral range, EvalOptions opts) : range_(range), opts_(opts) {}

std::optional<Choice> RefuterAbelard::choose(const Play& play) {
  const Formula& pos = play.last();
  if (pos.is_quantifier()) {
    for (Numeral n = 0; n < range_; ++n) {
      if (!bounded_truth(instantiate(pos, n), range_, opts_)) return Choice::numeral(n);
    }
    return Choice::numeral(0);
  }
  if (!bounded_truth(pos.left(), range_, opts_)) return Choice::left();
  if (!bounded_truth(pos.right(), range_, opts_)) return Choice::right();
  return Choice::left();
}

std::string RefuterAbelard::describe() const { return "refuter:" + std::to_string(range_); }

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used == s.size() && !s.empty() && s[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Usage, "invalid " + what + " '" + s + "'");
}

}  // namespace

std::unique_ptr<AbelardStrategy> parse_abelard(const std::string& spec) {
  std::vector<std::string> parts = split(spec, ':');
  if (parts.empty()) throw Error(ErrorCode::Usage, "empty Abelard specification");
  const std::string& kind = parts[0];
  if (kind == "random") {
    if (parts.size() < 2 || parts.size() > 3) throw Error(ErrorCode::Usage, "expected random:SEED[:RANGE]");
    std::uint64_t seed = parse_u64(parts[1], "seed");
    Numeral range = parts.size() == 3 ? parse_u64(parts[2], "range") : 20;
    if (range == 0) throw Error(ErrorCode::Usage, "the range must be positive");
    return std::make_unique<RandomAbelard>(seed, range);
  }
  if (kind == "scripted") {
    std::vector<Choice> script;
    if (parts.size() == 2 && !parts[1].empty()) {
      for (const std::string& c : split(parts[1], ',')) {
        try {
          script.push_back(parse_choice(c));
        } catch (const Error& e) {
          throw Error(ErrorCode::Usage, std::string("bad scripted choice: ") + e.what());
        }
      }
    } else if (parts.size() > 2) {
      throw Error(ErrorCode::Usage, "expected scripted:C,C,...");
    }
    return std::make_unique<ScriptedAbelard>(std::move(script));
  }
  if (kind == "refuter") {
    if (parts.size() > 2) throw Error(ErrorCode::Usage, "expected refuter[:RANGE]");
    Numeral range = parts.size() == 2 ? parse_u64(parts[1], "range") : 20;
    if (range == 0) throw Error(ErrorCode::Usage, "the range must be positive");
    return std::make_unique<RefuterAbelard>(range);
  }
  throw Error(ErrorCode::Usage, "unknown Abelard strategy '" + kind + "'");
}

}  // namespace lbr
