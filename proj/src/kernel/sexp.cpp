#include "lbr/sexp.hpp"

#include <cctype>

#include "lbr/error.hpp"

namespace lbr {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return i_ >= text_.size();
  }

  Sexp read() {
    skip_space();
    if (i_ >= text_.size()) fail("unexpected end of input");
    Sexp e;
    e.pos = pos_;
    char c = text_[i_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      advance();
      e.is_list = true;
      for (;;) {
        skip_space();
        if (i_ >= text_.size()) {
          throw Error(ErrorCode::Parse, describe(e.pos) + ": unclosed '('");
        }
        if (text_[i_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    std::size_t start = i_;
    while (i_ < text_.size() && !is_delim(text_[i_])) advance();
    e.symbol = std::string(text_.substr(start, i_ - start));
    return e;
  }

 private:
  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c));
  }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == ';') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, describe(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace

std::string describe(const SourcePos& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

std::vector<Sexp> read_sexps(std::string_view text) {
  Reader r(text);
  std::vector<Sexp> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

Sexp read_sexp(std::string_view text) {
  Reader r(text);
  Sexp e = r.read();
  if (!r.at_end()) throw Error(ErrorCode::Parse, "trailing input after expression");
  return e;
}

}  // namespace lbr
