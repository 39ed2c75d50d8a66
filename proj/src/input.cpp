#include "polyvol/input.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <string_view>

#include "polyvol/errors.hpp"

namespace polyvol {

namespace {

struct Tok {
  std::string text;
  size_t line = 0;
};

std::vector<Tok> tokenize(const std::string& text) {
  std::vector<Tok> toks;
  std::string cur;
  size_t line = 1, cur_line = 1;
  bool comment = false;
  auto flush = [&] {
    if (!cur.empty()) {
      toks.push_back({cur, cur_line});
      cur.clear();
    }
  };
  for (char ch : text) {
    if (ch == '\n') {
      flush();
      comment = false;
      ++line;
      continue;
    }
    if (comment) continue;
    if (ch == '#') {
      flush();
      comment = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
      continue;
    }
    if (cur.empty()) cur_line = line;
    cur += ch;
  }
  flush();
  return toks;
}

[[noreturn]] void fail(size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ": " + msg);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// "-?digits" always; "-?digits/digits" with a nonzero denominator when
// rationals are allowed (vertex coordinates only).
void check_number(const Tok& t, bool allow_rational) {
  std::string_view s = t.text;
  size_t slash = s.find('/');
  std::string_view head = slash == std::string_view::npos ? s : s.substr(0, slash);
  if (!head.empty() && head[0] == '-') head.remove_prefix(1);
  if (!all_digits(head))
    fail(t.line, "expected a number, got '" + t.text + "'");
  if (slash == std::string_view::npos) return;
  if (!allow_rational)
    fail(t.line, "expected an integer, got '" + t.text + "'");
  std::string_view den = s.substr(slash + 1);
  if (!all_digits(den))
    fail(t.line, "expected a number, got '" + t.text + "'");
  if (den.find_first_not_of('0') == std::string_view::npos)
    fail(t.line, "zero denominator in '" + t.text + "'");
}

class Cursor {
public:
  explicit Cursor(const std::string& text) : toks_(tokenize(text)) {}

  bool done() const { return i_ == toks_.size(); }

  const Tok& next(const char* what) {
    if (done())
      throw Error(ErrorKind::ParseError,
                  std::string("unexpected end of input while reading ") + what);
    return toks_[i_++];
  }

  size_t count(const char* what, size_t max) {
    const Tok& t = next(what);
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size())
      fail(t.line, std::string("expected a count for ") + what + ", got '" +
                       t.text + "'");
    if (v < 1 || v > max)
      fail(t.line, std::string(what) + " count out of range: " + t.text);
    return static_cast<size_t>(v);
  }

  std::vector<std::string> row(size_t width, bool allow_rational,
                               const char* what) {
    std::vector<std::string> out;
    out.reserve(width);
    for (size_t j = 0; j < width; ++j) {
      const Tok& t = next(what);
      check_number(t, allow_rational);
      out.push_back(t.text);
    }
    return out;
  }

private:
  std::vector<Tok> toks_;
  size_t i_ = 0;
};

}  // namespace

ProblemInput parse_input(const std::string& text) {
  Cursor cur(text);
  ProblemInput pi;
  bool have_n = false;
  bool saw_grading = false;

  while (!cur.done()) {
    const Tok kw = cur.next("a keyword");
    if (kw.text == "amb_space") {
      if (have_n) fail(kw.line, "duplicate amb_space");
      pi.ambient_n = cur.count("amb_space", 1000000);
      have_n = true;
      continue;
    }
    if (!have_n) fail(kw.line, "amb_space must come before '" + kw.text + "'");
    if (kw.text == "vertices") {
      if (!pi.vertices.empty()) fail(kw.line, "duplicate vertices block");
      size_t r = cur.count("vertices", 1000000);
      for (size_t i = 0; i < r; ++i)
        pi.vertices.push_back(cur.row(pi.ambient_n, true, "a vertex row"));
    } else if (kw.text == "inequalities") {
      if (!pi.inequalities.empty()) fail(kw.line, "duplicate inequalities block");
      size_t r = cur.count("inequalities", 1000000);
      for (size_t i = 0; i < r; ++i)
        pi.inequalities.push_back(
            cur.row(pi.ambient_n + 1, false, "an inequality row"));
    } else if (kw.text == "equations") {
      if (!pi.equations.empty()) fail(kw.line, "duplicate equations block");
      size_t r = cur.count("equations", 1000000);
      for (size_t i = 0; i < r; ++i)
        pi.equations.push_back(
            cur.row(pi.ambient_n + 1, false, "an equation row"));
    } else if (kw.text == "grading") {
      if (saw_grading) fail(kw.line, "duplicate grading block");
      saw_grading = true;
      pi.grading = cur.row(pi.ambient_n + 1, false, "the grading row");
    } else {
      fail(kw.line, "unknown keyword '" + kw.text + "'");
    }
  }

  if (!have_n)
    throw Error(ErrorKind::ParseError, "missing amb_space declaration");
  bool constraints = !pi.inequalities.empty() || !pi.equations.empty();
  if (pi.vertices.empty() && !constraints)
    throw Error(ErrorKind::ParseError,
                "input defines no polytope: need vertices or constraints");
  if (!pi.vertices.empty() && constraints)
    throw Error(ErrorKind::InconsistentDimensions,
                "vertices cannot be combined with inequalities or equations");
  pi.vertices_mode = !pi.vertices.empty();
  return pi;
}

std::string serialize_input(const ProblemInput& pi) {
  std::ostringstream o;
  o << "amb_space " << pi.ambient_n << "\n";
  auto block = [&](const char* kw, const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    o << kw << " " << rows.size() << "\n";
    for (const auto& r : rows) {
      for (size_t j = 0; j < r.size(); ++j) o << (j ? " " : "") << r[j];
      o << "\n";
    }
  };
  block("vertices", pi.vertices);
  block("inequalities", pi.inequalities);
  block("equations", pi.equations);
  if (!pi.grading.empty()) {
    o << "grading\n";
    for (size_t j = 0; j < pi.grading.size(); ++j)
      o << (j ? " " : "") << pi.grading[j];
    o << "\n";
  }
  return o.str();
}

}  // namespace polyvol
