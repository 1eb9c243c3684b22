#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lplab/group.hpp"

namespace lplab {

namespace detail {

inline std::int64_t parse_int_at(std::string_view s, std::size_t& pos,
                                 const char* what) {
  std::size_t start = pos;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    neg = s[pos] == '-';
    ++pos;
  }
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    throw DomainError(std::string("parse error at position ") +
                      std::to_string(start) + ": expected " + what);
  std::int64_t v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    ++pos;
  }
  return neg ? -v : v;
}

inline void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
    ++pos;
}

}  // namespace detail

inline GroupSpec GroupSpec::parse(std::string_view text) {
  std::size_t pos = 0;
  std::vector<GroupSpec> factors;
  auto fail = [&](const char* msg) -> GroupSpec {
    throw DomainError("group spec parse error at position " +
                      std::to_string(pos) + ": " + msg);
  };
  while (true) {
    detail::skip_ws(text, pos);
    if (pos >= text.size()) return fail("expected a group factor");
    char c = text[pos];
    if (c == 'Z') {
      ++pos;
      std::int64_t d = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        d = detail::parse_int_at(text, pos, "an exponent");
      }
      if (d < 1) return fail("Z^d needs d >= 1");
      factors.push_back(GroupSpec::free_abelian(d));
    } else if (c == 'F' || c == 'C') {
      ++pos;
      std::int64_t n = detail::parse_int_at(
          text, pos, c == 'F' ? "a free rank" : "a cyclic order");
      if (n < 1) return fail("rank/order must be >= 1");
      factors.push_back(c == 'F' ? GroupSpec::free_group(n)
                                 : GroupSpec::finite_cyclic(n));
    } else {
      return fail("expected Z, F<k>, or C<m>");
    }
    detail::skip_ws(text, pos);
    if (pos >= text.size()) break;
    if (text[pos] != 'x') return fail("expected 'x' between factors");
    ++pos;
  }
  if (factors.size() == 1) return factors[0];
  return GroupSpec::direct_product(std::move(factors));
}

namespace detail {

inline std::string free_letter_name(std::int64_t k, std::int64_t letter) {
  std::int64_t idx = letter > 0 ? letter : -letter;
  std::string name = k <= 26 ? std::string(1, static_cast<char>('a' + idx - 1))
                             : "g" + std::to_string(idx);
  if (letter < 0) name += "^-1";
  return name;
}

inline GroupElement parse_free_word(const GroupSpec& g, std::string_view s) {
  std::size_t pos = 0;
  GroupElement::Data word;
  skip_ws(s, pos);
  if (pos < s.size() && s[pos] == 'e' &&
      (pos + 1 == s.size() ||
       std::isspace(static_cast<unsigned char>(s[pos + 1])))) {
    ++pos;
    skip_ws(s, pos);
    if (pos != s.size())
      throw DomainError("parse error: trailing text after identity word");
    return GroupElement(std::move(word));
  }
  while (pos < s.size()) {
    std::int64_t idx;
    char c = s[pos];
    if (c == 'g') {
      ++pos;
      idx = parse_int_at(s, pos, "a generator index");
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      idx = c - 'a' + 1;
      ++pos;
    } else {
      throw DomainError("parse error at position " + std::to_string(pos) +
                        ": expected a generator letter");
    }
    if (idx < 1 || idx > g.param())
      throw DomainError("generator index out of range for " + g.to_string());
    std::int64_t exp = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      exp = parse_int_at(s, pos, "an exponent");
    }
    std::int64_t letter = exp >= 0 ? idx : -idx;
    for (std::int64_t i = 0; i < (exp >= 0 ? exp : -exp); ++i) {
      if (!word.empty() && word.back() == -letter)
        word.pop_back();
      else
        word.push_back(letter);
    }
    skip_ws(s, pos);
  }
  return GroupElement(std::move(word));
}

inline std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

// Canonical text forms: integers / "(c1,...,cd)" for Z^d, words like
// "a b^-1 a" (identity "e") for F_k, residues for C_m, factor forms joined
// by "|" for products.
inline GroupElement parse_element(const GroupSpec& g, std::string_view text) {
  using namespace detail;
  std::string_view s = trim(text);
  switch (g.kind()) {
    case GroupKind::FreeAbelian: {
      if (!s.empty() && s.front() == '(') {
        if (s.back() != ')')
          throw DomainError("parse error: unbalanced parentheses");
        s = s.substr(1, s.size() - 2);
      }
      auto parts = split_top(s, ',');
      if (parts.size() != static_cast<std::size_t>(g.param()))
        throw DomainError("expected " + std::to_string(g.param()) +
                          " coordinates for " + g.to_string());
      GroupElement::Data d;
      for (auto part : parts) {
        std::size_t pos = 0;
        auto t = trim(part);
        d.push_back(parse_int_at(t, pos, "a coordinate"));
        skip_ws(t, pos);
        if (pos != t.size())
          throw DomainError("parse error: trailing text in coordinate");
      }
      return GroupElement(std::move(d));
    }
    case GroupKind::Free:
      return parse_free_word(g, s);
    case GroupKind::FiniteCyclic: {
      std::size_t pos = 0;
      std::int64_t r = parse_int_at(s, pos, "a residue");
      skip_ws(s, pos);
      if (pos != s.size())
        throw DomainError("parse error: trailing text in residue");
      std::int64_t m = g.param();
      r %= m;
      if (r < 0) r += m;
      GroupElement::Data d;
      d.assign(1, r);
      return GroupElement(std::move(d));
    }
    case GroupKind::DirectProduct: {
      auto parts = split_top(s, '|');
      if (parts.size() != g.factors().size())
        throw DomainError("expected " + std::to_string(g.factors().size()) +
                          " '|'-separated factors for " + g.to_string());
      std::vector<GroupElement> elems;
      for (std::size_t i = 0; i < parts.size(); ++i)
        elems.push_back(parse_element(g.factors()[i], parts[i]));
      return compose_parts(g, elems);
    }
  }
  throw DomainError("parse_element: unknown group kind");
}

inline std::string format_element(const GroupSpec& g, const GroupElement& x) {
  const auto& a = x.data();
  switch (g.kind()) {
    case GroupKind::FreeAbelian: {
      if (g.param() == 1) return std::to_string(a[0]);
      std::string out = "(";
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a[i]);
      }
      return out + ")";
    }
    case GroupKind::Free: {
      if (a.empty()) return "e";
      std::string out;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += " ";
        out += detail::free_letter_name(g.param(), a[i]);
      }
      return out;
    }
    case GroupKind::FiniteCyclic:
      return std::to_string(a[0]);
    case GroupKind::DirectProduct: {
      auto parts = factor_parts(g, x);
      std::string out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "|";
        out += format_element(g.factors()[i], parts[i]);
      }
      return out;
    }
  }
  return {};
}

}  // namespace lplab
