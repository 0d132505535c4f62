#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <string>

#include "hlawka/shapes.hpp"

namespace hlawka {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RadialShape parse() {
    if (text_.empty()) fail("empty shape specification");
    RadialShape shape = primary();
    while (pos_ < text_.size()) {
      if (accept('*')) {
        const std::size_t at = pos_;
        const double c = number();
        if (!(c > 0.0)) fail_at(at, "scale factor must be positive");
        shape = shape.scaled(c);
      } else if (accept('@')) {
        expect_word("gl2");
        expect('=');
        double e[4];
        const std::size_t at = pos_;
        for (int i = 0; i < 4; ++i) {
          if (i > 0) expect(',');
          e[i] = number();
        }
        try {
          shape = act(Mat2(e[0], e[1], e[2], e[3]), shape);
        } catch (const DomainError& ex) {
          fail_at(at, ex.what());
        }
      } else {
        fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
      }
    }
    return shape;
  }

 private:
  RadialShape primary() {
    const std::size_t name_at = pos_;
    const std::string name = word();
    std::map<std::string, std::pair<double, std::size_t>> params;
    if (accept(':')) {
      do {
        const std::size_t key_at = pos_;
        const std::string key = word();
        expect('=');
        const double v = number();
        if (!params.emplace(key, std::make_pair(v, key_at)).second) fail_at(key_at, "duplicate parameter '" + key + "'");
      } while (accept(','));
    }
    auto take = [&](const std::string& key, double fallback, bool required) {
      auto it = params.find(key);
      if (it == params.end()) {
        if (required) fail_at(name_at, name + ": missing parameter '" + key + "'");
        return fallback;
      }
      const double v = it->second.first;
      params.erase(it);
      return v;
    };
    auto no_leftovers = [&] {
      if (!params.empty()) {
        const auto& [key, val] = *params.begin();
        fail_at(val.second, name + ": unknown parameter '" + key + "'");
      }
    };
    try {
      if (name == "circle") {
        const double c = take("c", 1.0, false);
        no_leftovers();
        return RadialShape::circle(c);
      }
      if (name == "ellipse") {
        const double a = take("a", 0.0, true);
        const double b = take("b", 0.0, true);
        const double phi = take("phi", 0.0, false);
        no_leftovers();
        return RadialShape::ellipse(a, b, phi);
      }
      if (name == "square" || name == "odd") {
        no_leftovers();
        return name == "square" ? RadialShape::square() : RadialShape::odd();
      }
      if (name == "cos") {
        std::vector<double> coeffs;
        for (const auto& [key, val] : params) {
          if (key.size() < 2 || key[0] != 'c') fail_at(val.second, "cos: parameters are named c0, c1, ...");
          std::size_t q = 0;
          const auto* first = key.data() + 1;
          const auto* last = key.data() + key.size();
          const auto res = std::from_chars(first, last, q);
          if (res.ec != std::errc{} || res.ptr != last || q > 4096)
            fail_at(val.second, "cos: bad coefficient index '" + key + "'");
          if (coeffs.size() <= q) coeffs.resize(q + 1, 0.0);
          coeffs[q] = val.first;
        }
        if (coeffs.empty()) fail_at(name_at, "cos: at least one coefficient is required");
        return RadialShape::cosine_series(std::move(coeffs));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const DomainError& ex) {
      fail_at(name_at, ex.what());
    }
    fail_at(name_at, "unknown shape kind '" + name + "'");
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void expect_word(std::string_view w) {
    const std::size_t at = pos_;
    if (word() != w) fail_at(at, "expected '" + std::string(w) + "'");
  }

  std::string word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    const std::size_t start = pos_;
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first < last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{}) fail_at(start, "expected a number");
    if (!std::isfinite(v)) fail_at(start, "number is not finite");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  [[noreturn]] void fail(const std::string& reason) const { throw ParseError(pos_, reason); }
  [[noreturn]] static void fail_at(std::size_t at, const std::string& reason) { throw ParseError(at, reason); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RadialShape parse_shape(std::string_view spec) { return Parser(spec).parse(); }

}  // namespace hlawka
