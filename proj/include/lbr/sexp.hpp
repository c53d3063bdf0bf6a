#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lbr {

struct SourcePos {
  int line = 1;
  int column = 1;
};

// A parsed S-expression: a symbol or a list.
struct Sexp {
  bool is_list = false;
  std::string symbol;
  std::vector<Sexp> items;
  SourcePos pos;

  bool is_symbol() const { return !is_list; }
  bool is_symbol(std::string_view s) const { return !is_list && symbol == s; }
  // True for a list whose head is the symbol `head`.
  bool is_form(std::string_view head) const {
    return is_list && !items.empty() && items[0].is_symbol(head);
  }
};

// Reads every top-level expression. ';' starts a comment running to end of line.
// Throws Error(Parse) with line:column on malformed input.
std::vector<Sexp> read_sexps(std::string_view text);

// Reads exactly one expression.
Sexp read_sexp(std::string_view text);

std::string describe(const SourcePos& pos);

}  // namespace lbr
