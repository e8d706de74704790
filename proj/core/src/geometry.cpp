#include "pebble/geometry.hpp"

#include "pebble/error.hpp"

#include <algorithm>
#include <cctype>

namespace pebble {

namespace {

bool is_decimal(std::string_view s)
{
  if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; });
}

// Bound of the form  coef * y + offset.
struct Affine {
  Rational coef;
  Rational offset;

  Rational at(const Rational& y) const { return coef * y + offset; }
};

// Pick a point strictly inside (lo, hi); either end may be unbounded.
Rational interior(const std::optional<Rational>& lo, const std::optional<Rational>& hi)
{
  if (lo && hi)
    return (*lo + *hi) / 2;
  if (lo)
    return *lo + 1;
  if (hi)
    return *hi - 1;
  return Rational(0);
}

Rational cross(const Point& o, const Point& a, const Point& b)
{
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

} // namespace

Rational ratio(Integer num, Integer den)
{
  if (den == 0)
    throw InputError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value)
{
  const Integer& num = boost::multiprecision::numerator(value);
  const Integer& den = boost::multiprecision::denominator(value);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

Integer parse_integer(std::string_view text)
{
  if (!is_decimal(text))
    throw InputError("not an integer: '" + std::string(text) + "'");
  if (text.front() == '+')
    text.remove_prefix(1);
  return Integer(std::string(text));
}

Rational parse_rational(std::string_view text)
{
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-')
    throw InputError("negative denominator in '" + std::string(text) + "'");
  const Integer den = parse_integer(den_text);
  if (den == 0)
    throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string_view to_string(Side s) noexcept
{
  return s == Side::Plus ? "plus" : "minus";
}

Side parse_side(std::string_view text)
{
  if (text == "plus" || text == "+")
    return Side::Plus;
  if (text == "minus" || text == "-")
    return Side::Minus;
  throw InputError("side must be \"plus\" or \"minus\", got '" + std::string(text) + "'");
}

Line::Line(Integer a, Integer b, Integer c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
{
  if (a_ == 0 && b_ == 0)
    throw InputError("line has a = b = 0");
  Integer g = gcd(gcd(abs(a_), abs(b_)), abs(c_));
  if (g != 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
  if (a_ < 0 || (a_ == 0 && b_ < 0)) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
}

Rational Line::eval(const Point& p) const
{
  return Rational(a_) * p.x + Rational(b_) * p.y + Rational(c_);
}

bool Line::parallel_to(const Line& other) const
{
  return a_ * other.b_ == b_ * other.a_;
}

bool Line::passes_through(const Point& p) const
{
  return eval(p) == 0;
}

Position side_of(const Line& line, const Point& p)
{
  const Rational v = line.eval(p);
  if (v > 0)
    return Position::Plus;
  if (v < 0)
    return Position::Minus;
  return Position::On;
}

std::optional<Point> intersect(const Line& l1, const Line& l2)
{
  const Integer det = l1.a() * l2.b() - l1.b() * l2.a();
  if (det == 0)
    return std::nullopt;
  // Cramer's rule on a1 x + b1 y = -c1, a2 x + b2 y = -c2.
  const Integer x_num = l1.b() * l2.c() - l2.b() * l1.c();
  const Integer y_num = l2.a() * l1.c() - l1.a() * l2.c();
  Rational x = ratio(x_num, det);
  Rational y = ratio(y_num, det);
  return Point{std::move(x), std::move(y)};
}

// Two-variable Fourier-Motzkin elimination of x over strict inequalities,
// then back-substitution choosing midpoints of the open intervals.
std::optional<Point> feasible(std::span<const HalfPlane> constraints)
{
  std::vector<Affine> x_lower;
  std::vector<Affine> x_upper;
  // Strict constraints coef * y + offset > 0.
  std::vector<Affine> y_constraints;

  for (const auto& [line, side] : constraints) {
    const int sign = side == Side::Plus ? 1 : -1;
    const Rational a(Integer(sign * line.a()));
    const Rational b(Integer(sign * line.b()));
    const Rational c(Integer(sign * line.c()));
    if (a == 0) {
      y_constraints.push_back({b, c});
      continue;
    }
    Affine bound{-b / a, -c / a};
    (a > 0 ? x_lower : x_upper).push_back(std::move(bound));
  }
  for (const auto& lo : x_lower)
    for (const auto& hi : x_upper)
      y_constraints.push_back({hi.coef - lo.coef, hi.offset - lo.offset});

  std::optional<Rational> y_lo;
  std::optional<Rational> y_hi;
  for (const auto& [coef, offset] : y_constraints) {
    if (coef == 0) {
      if (offset <= 0)
        return std::nullopt;
      continue;
    }
    Rational root = -offset / coef;
    if (coef > 0) {
      if (!y_lo || root > *y_lo)
        y_lo = std::move(root);
    } else if (!y_hi || root < *y_hi) {
      y_hi = std::move(root);
    }
  }
  if (y_lo && y_hi && *y_lo >= *y_hi)
    return std::nullopt;
  Rational y = interior(y_lo, y_hi);

  std::optional<Rational> x_lo;
  std::optional<Rational> x_hi;
  for (const auto& bound : x_lower) {
    Rational v = bound.at(y);
    if (!x_lo || v > *x_lo)
      x_lo = std::move(v);
  }
  for (const auto& bound : x_upper) {
    Rational v = bound.at(y);
    if (!x_hi || v < *x_hi)
      x_hi = std::move(v);
  }
  Rational x = interior(x_lo, x_hi);
  return Point{std::move(x), std::move(y)};
}

std::vector<Point> clip_cell(std::span<const HalfPlane> constraints, const BoundingBox& box)
{
  std::vector<Point> poly{
      {box.xmin, box.ymin}, {box.xmax, box.ymin}, {box.xmax, box.ymax}, {box.xmin, box.ymax}};

  for (const auto& [line, side] : constraints) {
    const int sign = side == Side::Plus ? 1 : -1;
    std::vector<Point> next;
    next.reserve(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % poly.size()];
      const Rational vp = sign * line.eval(p);
      const Rational vq = sign * line.eval(q);
      if (vp >= 0)
        next.push_back(p);
      if ((vp > 0 && vq < 0) || (vp < 0 && vq > 0)) {
        const Rational t = vp / (vp - vq);
        next.push_back({p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t});
      }
    }
    poly = std::move(next);
    if (poly.empty())
      return {};
  }

  // Drop repeated and collinear vertices.
  bool changed = true;
  while (changed && poly.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& prev = poly[(i + poly.size() - 1) % poly.size()];
      const Point& next = poly[(i + 1) % poly.size()];
      if (poly[i] == next || cross(prev, poly[i], next) == 0) {
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (poly.size() < 3)
    return {};

  auto lowest = std::min_element(poly.begin(), poly.end(), [](const Point& l, const Point& r) {
    return l.y < r.y || (l.y == r.y && l.x < r.x);
  });
  std::rotate(poly.begin(), lowest, poly.end());
  return poly;
}

} // namespace pebble
