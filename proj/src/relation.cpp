#include "schemes/relation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace schemes {

Relation::Relation(std::size_t n) {
  if (n == 0) throw std::invalid_argument("relation: point set must be nonempty");
  rows_.assign(n, Bitset(n));
}

Relation Relation::diagonal(std::size_t n) {
  Relation r(n);
  for (Point i = 0; i < n; ++i) r.rows_[i].set(i);
  return r;
}

Relation Relation::full(std::size_t n) {
  Relation r(n);
  for (auto& row : r.rows_) row = Bitset::filled(n);
  return r;
}

Relation Relation::from_pairs(std::size_t n, std::span<const PointPair> pairs) {
  Relation r(n);
  for (auto [a, b] : pairs) r.insert(a, b);
  return r;
}

bool Relation::at(Point alpha, Point beta) const {
  if (alpha >= size() || beta >= size())
    throw std::out_of_range("relation: point index out of range");
  return contains(alpha, beta);
}

void Relation::insert(Point alpha, Point beta) {
  if (alpha >= size() || beta >= size())
    throw std::out_of_range("relation: point index out of range");
  rows_[alpha].set(beta);
}

void Relation::erase(Point alpha, Point beta) {
  if (alpha >= size() || beta >= size())
    throw std::out_of_range("relation: point index out of range");
  rows_[alpha].reset(beta);
}

std::size_t Relation::pair_count() const noexcept {
  std::size_t c = 0;
  for (auto const& row : rows_) c += row.count();
  return c;
}

std::vector<std::size_t> Relation::in_degrees() const {
  std::vector<std::size_t> deg(size(), 0);
  for (auto const& row : rows_) row.for_each([&](std::size_t b) { ++deg[b]; });
  return deg;
}

std::vector<PointPair> Relation::pairs() const {
  std::vector<PointPair> out;
  out.reserve(pair_count());
  for (Point a = 0; a < size(); ++a)
    rows_[a].for_each([&](std::size_t b) { out.emplace_back(a, b); });
  return out;
}

void require_same_domain(const Relation& a, const Relation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("relation: domain mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + " points)");
}

Relation product(const Relation& lhs, const Relation& rhs) {
  require_same_domain(lhs, rhs);
  Relation out(lhs.size());
  for (Point a = 0; a < lhs.size(); ++a) {
    Bitset& dst = out.row(a);
    lhs.row(a).for_each([&](std::size_t g) { dst |= rhs.row(g); });
  }
  return out;
}

Relation transpose(const Relation& a) {
  Relation out(a.size());
  for (Point x = 0; x < a.size(); ++x)
    a.row(x).for_each([&](std::size_t y) { out.row(y).set(x); });
  return out;
}

Relation unite(const Relation& a, const Relation& b) {
  require_same_domain(a, b);
  Relation out(a);
  for (Point x = 0; x < a.size(); ++x) out.row(x) |= b.row(x);
  return out;
}

Relation intersect(const Relation& a, const Relation& b) {
  require_same_domain(a, b);
  Relation out(a);
  for (Point x = 0; x < a.size(); ++x) out.row(x) &= b.row(x);
  return out;
}

Relation complement(const Relation& a) {
  Relation out(a.size());
  for (Point x = 0; x < a.size(); ++x) out.row(x) = ~a.row(x);
  return out;
}

bool is_subset(const Relation& a, const Relation& b) {
  require_same_domain(a, b);
  for (Point x = 0; x < a.size(); ++x)
    if (!a.row(x).is_subset_of(b.row(x))) return false;
  return true;
}

bool is_symmetric(const Relation& a) { return a == transpose(a); }

std::size_t norm(const Relation& a) {
  std::size_t best = 0;
  for (Point x = 0; x < a.size(); ++x) best = std::max(best, a.out_degree(x));
  return best;
}

std::optional<Point> irregular_vertex(const Relation& a) {
  std::size_t const d0 = a.out_degree(0);
  for (Point x = 1; x < a.size(); ++x)
    if (a.out_degree(x) != d0) return x;
  return std::nullopt;
}

bool is_regular(const Relation& a) { return !irregular_vertex(a).has_value(); }

bool is_biregular(const Relation& a) {
  if (!is_regular(a)) return false;
  std::size_t const d = a.out_degree(0);
  for (auto in : a.in_degrees())
    if (in != d) return false;
  return true;
}

PointSubset neighborhood(const Relation& a, const PointSubset& subset) {
  if (subset.size() != a.size())
    throw std::invalid_argument("neighborhood: subset lives on a different point set");
  PointSubset out(a.size());
  subset.for_each([&](std::size_t x) { out |= a.row(x); });
  return out;
}

Relation power_with_loops(const Relation& a, std::size_t k) {
  if (k == 0) throw std::invalid_argument("power_with_loops: k must be positive");
  Relation base = unite(a, Relation::diagonal(a.size()));
  Relation acc = Relation::diagonal(a.size());
  while (true) {
    if (k & 1u) acc = product(acc, base);
    k >>= 1u;
    if (k == 0) break;
    base = product(base, base);
  }
  return acc;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a nonnegative integer, got '" + tok + "'");
  return value;
}

std::size_t parse_header(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(1, "missing point count");
  auto const& head = lines.front();
  if (head.tokens.size() != 1)
    throw ParseError(head.number, "first line must hold only the point count");
  std::size_t n = parse_index(head.tokens[0], head.number);
  if (n == 0) throw ParseError(head.number, "point count must be positive");
  return n;
}

Relation edges_from(const std::vector<Line>& lines) {
  Relation r(parse_header(lines));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto const& line = lines[i];
    if (line.tokens.size() != 2)
      throw ParseError(line.number, "expected a pair 'alpha beta'");
    std::size_t a = parse_index(line.tokens[0], line.number);
    std::size_t b = parse_index(line.tokens[1], line.number);
    if (a >= r.size() || b >= r.size())
      throw ParseError(line.number, "point index out of range");
    r.insert(a, b);
  }
  return r;
}

Relation dense_from(const std::vector<Line>& lines) {
  std::size_t const n = parse_header(lines);
  if (lines.size() != n + 1)
    throw ParseError(lines.back().number,
                     "expected " + std::to_string(n) + " matrix rows");
  Relation r(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto const& line = lines[a + 1];
    if (line.tokens.size() != 1 || line.tokens[0].size() != n)
      throw ParseError(line.number,
                       "expected a row of " + std::to_string(n) + " characters");
    for (std::size_t b = 0; b < n; ++b) {
      char c = line.tokens[0][b];
      if (c == '1')
        r.insert(a, b);
      else if (c != '0')
        throw ParseError(line.number, "matrix entries must be 0 or 1");
    }
  }
  return r;
}

}  // namespace

Relation read_edge_list(std::istream& in) { return edges_from(tokenize(in)); }

Relation read_dense(std::istream& in) { return dense_from(tokenize(in)); }

Relation read_relation(std::istream& in) {
  auto lines = tokenize(in);
  if (lines.size() >= 2 && lines[1].tokens.size() == 1) return dense_from(lines);
  return edges_from(lines);
}

void write_edge_list(std::ostream& out, const Relation& a) {
  out << a.size() << '\n';
  for (auto [x, y] : a.pairs()) out << x << ' ' << y << '\n';
}

void write_dense(std::ostream& out, const Relation& a) {
  out << a.size() << '\n';
  for (Point x = 0; x < a.size(); ++x) {
    for (Point y = 0; y < a.size(); ++y) out << (a.contains(x, y) ? '1' : '0');
    out << '\n';
  }
}

}  // namespace schemes
