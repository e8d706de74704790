#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pebble {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num / den for any nonzero den; the Boost constructor rejects negative denominators.
Rational ratio(Integer num, Integer den);

/// "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& value);
/// Accepts "p", "p/q" and "-p/q". Throws InputError on anything else or q == 0.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Side : std::uint8_t { Plus, Minus };

constexpr Side opposite(Side s) noexcept { return s == Side::Plus ? Side::Minus : Side::Plus; }
constexpr char sign_char(Side s) noexcept { return s == Side::Plus ? '+' : '-'; }
std::string_view to_string(Side s) noexcept;
Side parse_side(std::string_view text);

/// Result of evaluating a point against a line.
enum class Position : std::uint8_t { Plus, Minus, On };

/// The line a*x + b*y + c = 0 in canonical form: gcd(|a|,|b|,|c|) = 1 and the
/// first nonzero of (a, b) positive. Plus is the open half-plane a*x + b*y + c > 0.
class Line {
public:
  /// Throws InputError when a == b == 0.
  Line(Integer a, Integer b, Integer c);

  const Integer& a() const noexcept { return a_; }
  const Integer& b() const noexcept { return b_; }
  const Integer& c() const noexcept { return c_; }

  Rational eval(const Point& p) const;
  bool parallel_to(const Line& other) const;
  bool passes_through(const Point& p) const;

  friend bool operator==(const Line&, const Line&) = default;

private:
  Integer a_;
  Integer b_;
  Integer c_;
};

Position side_of(const Line& line, const Point& p);

/// Absent when the lines are parallel. Callers must not pass equal lines.
std::optional<Point> intersect(const Line& l1, const Line& l2);

/// Open half-plane: the points strictly on `side` of `line`.
struct HalfPlane {
  Line line;
  Side side;
};

/// A point strictly inside every half-plane, or nullopt if their intersection is empty.
std::optional<Point> feasible(std::span<const HalfPlane> constraints);

struct BoundingBox {
  Rational xmin;
  Rational ymin;
  Rational xmax;
  Rational ymax;
};

/// Convex polygon (counter-clockwise, starting at the lowest-then-leftmost vertex)
/// of the closed half-planes intersected with `box`. Empty when the intersection has
/// no interior.
std::vector<Point> clip_cell(std::span<const HalfPlane> constraints, const BoundingBox& box);

} // namespace pebble
