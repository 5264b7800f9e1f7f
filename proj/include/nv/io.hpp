#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nv/element.hpp"

// Text formats (UTF-8, LF line endings, '#' starts a comment):
//
//   element    NV <n>
//              <brick> -> <brick>         one line per pair
//   brick      <k>/2^<e>,<k>/2^<e>,...    cell [k/2^e, (k+1)/2^e) per axis
//   word       element blocks separated by a line "--"; top block applied first
//   partition  NV <n>, then one <brick> per line
//   tree pair  [NV <n>] <tree> => <tree>
//              tree := L<label> | (S<axis> <tree> <tree>), lower half first

namespace nv::io {

namespace detail {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
  std::size_t offset;  // column of text[0], 0-based
};

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Non-blank lines with comments and surrounding blanks removed.
inline std::vector<Line> content_lines(std::string_view text, std::size_t first_line = 1) {
  std::vector<Line> out;
  std::size_t number = first_line;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t b = 0;
    while (b < raw.size() && is_space(raw[b])) ++b;
    std::size_t e = raw.size();
    while (e > b && is_space(raw[e - 1])) --e;
    if (e > b) out.push_back({number, raw.substr(b, e - b), b});
    ++number;
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(const Line& line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_.number, column(), what); }
  std::size_t column() const { return line_.offset + pos_ + 1; }
  bool done() const { return pos_ >= line_.text.size(); }
  char peek() const { return done() ? '\0' : line_.text[pos_]; }
  void skip_space() {
    while (!done() && is_space(peek())) ++pos_;
  }
  void expect(std::string_view token) {
    skip_space();
    if (line_.text.substr(pos_, token.size()) != token) fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }
  Integer number() {
    skip_space();
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(line_.text.substr(start, pos_ - start)));
  }
  const Line& line() const { return line_; }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

inline std::size_t parse_header(const Line& line) {
  Cursor c(line);
  c.expect("NV");
  if (!is_space(c.peek())) c.fail("expected 'NV <n>'");
  const Integer n = c.number();
  c.skip_space();
  if (!c.done()) c.fail("trailing characters after dimension");
  if (n < 1 || n > 64) c.fail("dimension must be between 1 and 64");
  return n.convert_to<std::size_t>();
}

inline Brick parse_brick(Cursor& c, std::size_t n, const Limits& limits) {
  std::vector<DyadicCell> cells;
  while (true) {
    const std::size_t column = c.column();
    const Integer k = c.number();
    c.expect("/");
    c.expect("2^");
    const Integer e = c.number();
    if (e > limits.max_exponent) {
      throw GuardExceeded(std::to_string(c.line().number) + ":" + std::to_string(column) + ": exponent " + e.str() +
                          " exceeds guard " + std::to_string(limits.max_exponent));
    }
    const unsigned ue = e.convert_to<unsigned>();
    if (k >= pow2(ue)) {
      throw InvalidElement(std::to_string(c.line().number) + ":" + std::to_string(column) + ": numerator " +
                           k.str() + " is not below 2^" + e.str());
    }
    cells.emplace_back(ue, k);
    c.skip_space();
    if (c.peek() != ',') break;
    c.expect(",");
  }
  if (cells.size() != n) {
    throw InvalidElement("line " + std::to_string(c.line().number) + ": brick has " + std::to_string(cells.size()) +
                         " axes, expected " + std::to_string(n));
  }
  return Brick(std::move(cells));
}

inline Element parse_element_lines(const std::vector<Line>& lines, std::size_t begin, std::size_t end,
                                   const Limits& limits) {
  if (begin == end) throw ParseError(1, 1, "missing 'NV <n>' header");
  const std::size_t n = parse_header(lines[begin]);
  std::vector<Piece> pieces;
  for (std::size_t i = begin + 1; i < end; ++i) {
    Cursor c(lines[i]);
    Brick dom = parse_brick(c, n, limits);
    c.expect("->");
    Brick ran = parse_brick(c, n, limits);
    c.skip_space();
    if (!c.done()) c.fail("trailing characters after pair");
    pieces.push_back({std::move(dom), std::move(ran)});
  }
  if (pieces.empty()) throw ParseError(lines[begin].number, 1, "element has no pairs");
  return Element::from_pairs(std::move(pieces));
}

}  // namespace detail

// A single brick such as "0/2^1,1/2^2".
inline Brick parse_brick(std::string_view text, std::size_t n, const Limits& limits = {}) {
  const detail::Line line{1, text, 0};
  detail::Cursor c(line);
  Brick b = detail::parse_brick(c, n, limits);
  c.skip_space();
  if (!c.done()) c.fail("trailing characters after brick");
  return b;
}

inline std::string serialize_element(const Element& e) {
  std::string out = "NV " + std::to_string(e.dimension()) + "\n";
  for (const auto& p : e) out += p.domain.to_string() + " -> " + p.range.to_string() + "\n";
  return out;
}

inline Element parse_element(std::string_view text, const Limits& limits = {}) {
  const auto lines = detail::content_lines(text);
  return detail::parse_element_lines(lines, 0, lines.size(), limits);
}

inline std::string serialize_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "--\n";
    out += serialize_element(w[i]);
  }
  return out;
}

inline Word parse_word(std::string_view text, const Limits& limits = {}) {
  const auto lines = detail::content_lines(text);
  Word w;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= lines.size(); ++i) {
    if (i < lines.size() && lines[i].text != "--") continue;
    if (i == lines.size() && begin == i && w.empty()) break;
    if (begin == i) {
      const std::size_t line = i < lines.size() ? lines[i].number : (lines.empty() ? 1 : lines.back().number);
      throw ParseError(line, 1, "empty element block");
    }
    w.push_back(detail::parse_element_lines(lines, begin, i, limits));
    begin = i + 1;
  }
  return w;
}

// Bricks in file order; the set must be a partition.
inline std::vector<Brick> parse_partition(std::string_view text, const Limits& limits = {}) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "missing 'NV <n>' header");
  const std::size_t n = detail::parse_header(lines.front());
  std::vector<Brick> bricks;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    detail::Cursor c(lines[i]);
    bricks.push_back(detail::parse_brick(c, n, limits));
    c.skip_space();
    if (!c.done()) c.fail("trailing characters after brick");
  }
  if (auto v = partition_validate(bricks); !v) throw InvalidArgument("not a partition: " + v.diagnostic);
  return bricks;
}

inline std::string serialize_partition(const Partition& p) {
  std::string out = "NV " + std::to_string(p.dimension()) + "\n";
  for (const auto& b : p) out += b.to_string() + "\n";
  return out;
}

namespace detail {

struct TreeNode {
  bool leaf = true;
  Integer label = 0;
  std::size_t axis = 0;
  std::vector<TreeNode> kids;
};

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (is_space(c) || c == '\n') {
        ++pos_;
      } else {
        break;
      }
    }
  }
  bool at(std::string_view token) {
    skip();
    return text_.substr(pos_, token.size()) == token;
  }
  void expect(std::string_view token) {
    if (!at(token)) fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }
  bool done() {
    skip();
    return pos_ >= text_.size();
  }
  Integer number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::optional<std::size_t> header() {
    if (!at("NV")) return std::nullopt;
    pos_ += 2;
    skip();
    const Integer n = number();
    if (n < 1 || n > 64) fail("dimension must be between 1 and 64");
    return n.convert_to<std::size_t>();
  }

  TreeNode tree() {
    skip();
    TreeNode node;
    if (at("L")) {
      ++pos_;
      node.label = number();
      return node;
    }
    expect("(");
    expect("S");
    const Integer axis = number();
    if (axis > 63) fail("axis out of range");
    node.leaf = false;
    node.axis = axis.convert_to<std::size_t>();
    node.kids.push_back(tree());
    node.kids.push_back(tree());
    expect(")");
    return node;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::size_t max_axis_plus_one(const TreeNode& t) {
  if (t.leaf) return 0;
  return std::max({t.axis + 1, max_axis_plus_one(t.kids[0]), max_axis_plus_one(t.kids[1])});
}

inline void collect_leaves(const TreeNode& t, const Brick& region, const Limits& limits,
                           std::vector<std::pair<Integer, Brick>>& out) {
  if (t.leaf) {
    out.emplace_back(t.label, region);
    return;
  }
  if (t.axis >= region.dimension()) {
    throw InvalidArgument("split axis " + std::to_string(t.axis) + " out of range for dimension " +
                          std::to_string(region.dimension()));
  }
  auto [lo, hi] = brick_split(region, t.axis, limits);
  collect_leaves(t.kids[0], lo, limits, out);
  collect_leaves(t.kids[1], hi, limits, out);
}

}  // namespace detail

// Domain leaves must be numbered 0..k-1 in depth-first, lower-first order; the
// range leaves carry the same labels in any arrangement.
inline Element parse_tree_pair(std::string_view text, const Limits& limits = {}) {
  detail::TreeParser parser(text);
  const auto declared = parser.header();
  const detail::TreeNode dom = parser.tree();
  parser.expect("=>");
  const detail::TreeNode ran = parser.tree();
  if (!parser.done()) parser.fail("trailing characters after tree pair");

  const std::size_t n =
      declared.value_or(std::max<std::size_t>({1, detail::max_axis_plus_one(dom), detail::max_axis_plus_one(ran)}));
  std::vector<std::pair<Integer, Brick>> dom_leaves;
  std::vector<std::pair<Integer, Brick>> ran_leaves;
  detail::collect_leaves(dom, Brick::unit(n), limits, dom_leaves);
  detail::collect_leaves(ran, Brick::unit(n), limits, ran_leaves);

  for (std::size_t i = 0; i < dom_leaves.size(); ++i) {
    if (dom_leaves[i].first != i) {
      throw InvalidArgument("label mismatch: domain leaf " + std::to_string(i) + " is labelled " +
                            dom_leaves[i].first.str() + "; domain labels must be 0..k-1 in depth-first order");
    }
  }
  if (ran_leaves.size() != dom_leaves.size()) {
    throw InvalidArgument("label mismatch: " + std::to_string(dom_leaves.size()) + " domain leaves vs " +
                          std::to_string(ran_leaves.size()) + " range leaves");
  }
  std::vector<std::optional<Brick>> image(dom_leaves.size());
  for (const auto& [label, brick] : ran_leaves) {
    if (label >= dom_leaves.size() || image[label.convert_to<std::size_t>()]) {
      throw InvalidArgument("label mismatch: range label " + label.str() + " is unknown or repeated");
    }
    image[label.convert_to<std::size_t>()] = brick;
  }
  std::vector<Piece> pieces;
  pieces.reserve(dom_leaves.size());
  for (std::size_t i = 0; i < dom_leaves.size(); ++i) pieces.push_back({dom_leaves[i].second, *image[i]});
  return Element::from_pairs(std::move(pieces));
}

inline constexpr int kSquare = 512;
inline constexpr int kGap = 64;
inline constexpr int kMargin = 16;
inline constexpr int kFontSize = 20;

// Domain square on the left, range square on the right, an arrow between.
// Drawn from the coarsened element; label i marks the i-th pair on both sides.
inline std::string render_svg(const Element& e) {
  if (e.dimension() != 2) throw InvalidArgument("render_svg supports dimension 2 only");
  const Element c = coarsen(e);
  const int width = 2 * kMargin + 2 * kSquare + kGap;
  const int height = 2 * kMargin + kSquare;
  const Dyadic scale_one = Dyadic::from_int(1);
  auto coord = [](int origin, const Dyadic& v) { return (Dyadic::from_int(origin) + v.scaled(9)).to_decimal(); };
  // y grows downward in SVG; flip so axis 1 points up.
  auto flip = [&](const Dyadic& v) { return scale_one - v; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  const int origins[2] = {kMargin, kMargin + kSquare + kGap};
  for (int side = 0; side < 2; ++side) {
    const int ox = origins[side];
    out << "<g fill=\"none\" stroke=\"#000000\" stroke-width=\"1\">\n";
    for (const auto& p : c) {
      const Brick& b = side == 0 ? p.domain : p.range;
      out << "<rect x=\"" << coord(ox, b.cell(0).lower()) << "\" y=\"" << coord(kMargin, flip(b.cell(1).upper()))
          << "\" width=\"" << b.cell(0).length().scaled(9).to_decimal() << "\" height=\""
          << b.cell(1).length().scaled(9).to_decimal() << "\"/>\n";
    }
    out << "</g>\n";
  }
  const int mid_y = kMargin + kSquare / 2;
  const int arrow_from = kMargin + kSquare + 12;
  const int arrow_to = kMargin + kSquare + kGap - 12;
  out << "<line x1=\"" << arrow_from << "\" y1=\"" << mid_y << "\" x2=\"" << arrow_to - 8 << "\" y2=\"" << mid_y
      << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  out << "<polygon points=\"" << arrow_to << "," << mid_y << " " << arrow_to - 10 << "," << mid_y - 5 << " "
      << arrow_to - 10 << "," << mid_y + 5 << "\" fill=\"#000000\"/>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"" << kFontSize
      << "\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"#000000\">\n";
  for (int side = 0; side < 2; ++side) {
    const int ox = origins[side];
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Brick& b = side == 0 ? c.pieces()[i].domain : c.pieces()[i].range;
      const Point mid = b.center();
      out << "<text x=\"" << coord(ox, mid[0]) << "\" y=\"" << coord(kMargin, flip(mid[1])) << "\">" << i
          << "</text>\n";
    }
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace nv::io
