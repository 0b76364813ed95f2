#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "qsl2/errors.hpp"
#include "qsl2/tangle.hpp"

namespace qsl2 {

std::string to_string(const StrandLabel& label) {
  return label.down ? label.color + "*" : label.color;
}

std::string to_string(const BoundarySignature& sig) {
  std::string out = "(";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ", ";
    out += to_string(sig[i]);
  }
  return out + ")";
}

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

// Splits on whitespace, keeping bracketed and parenthesized groups whole so
// that "word=[1, -2]" stays one token.
std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    Token tok;
    tok.column = static_cast<int>(i) + 1;
    int depth = 0;
    while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i])))) {
      const char c = line[i];
      if (c == '[' || c == '(') ++depth;
      if (c == ']' || c == ')') {
        if (--depth < 0) throw ParseError("unbalanced bracket", line_no, static_cast<int>(i) + 1);
      }
      if (depth == 0 || !std::isspace(static_cast<unsigned char>(c))) tok.text += c;
      ++i;
    }
    if (depth != 0) throw ParseError("unterminated bracket", line_no, tok.column);
    out.push_back(std::move(tok));
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line) : tokens_(std::move(tokens)), line_(line) {}

  [[noreturn]] void fail(const std::string& what, int column) const {
    throw ParseError(what, line_, column);
  }

  int parse_int(const std::string& s, int column) const {
    int value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) fail("expected an integer, got '" + s + "'", column);
    return value;
  }

  double parse_double(const std::string& s, int column) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail("expected a number, got '" + s + "'", column);
    }
  }

  std::vector<std::string> parse_list(const Token& tok, const std::string& value, int column) const {
    if (value.size() < 2 || value.front() != '[' || value.back() != ']')
      fail("expected a bracketed list in '" + tok.text + "'", column);
    return split_commas(std::string_view(value).substr(1, value.size() - 2));
  }

  // key=value arguments after the keyword; every key must be known.
  std::map<std::string, std::pair<std::string, int>> keyed(std::size_t from,
                                                           const std::set<std::string>& known) const {
    std::map<std::string, std::pair<std::string, int>> out;
    for (std::size_t i = from; i < tokens_.size(); ++i) {
      const Token& tok = tokens_[i];
      const auto eq = tok.text.find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + tok.text + "'", tok.column);
      const std::string key = tok.text.substr(0, eq);
      if (!known.count(key)) fail("unknown key '" + key + "'", tok.column);
      if (out.count(key)) fail("duplicate key '" + key + "'", tok.column);
      out[key] = {tok.text.substr(eq + 1), tok.column + static_cast<int>(eq) + 1};
    }
    return out;
  }

  const std::vector<Token>& tokens() const { return tokens_; }
  int line() const { return line_; }

 private:
  std::vector<Token> tokens_;
  int line_;
};

Piece parse_piece(const LineParser& p, const Token& tok) {
  const auto open = tok.text.find('(');
  if (open == std::string::npos || tok.text.back() != ')')
    p.fail("expected piece of the form name(args), got '" + tok.text + "'", tok.column);
  const std::string name = tok.text.substr(0, open);
  const auto args = split_commas(std::string_view(tok.text).substr(open + 1, tok.text.size() - open - 2));
  const int argcol = tok.column + static_cast<int>(open) + 1;

  Piece piece;
  piece.column = tok.column;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      p.fail("wrong number of arguments to '" + name + "'", tok.column);
  };
  auto color_arg = [&](const std::string& s) {
    if (!valid_name(s)) p.fail("invalid color name '" + s + "'", argcol);
    return s;
  };
  auto down_flag = [&](const std::string& s) {
    if (s == "down") return true;
    if (s == "up") return false;
    p.fail("expected 'up' or 'down', got '" + s + "'", argcol);
  };

  if (name == "id") {
    // id(color) or id(color, down)
    need(1, 2);
    piece.kind = PieceKind::Id;
    piece.color = color_arg(args[0]);
    if (args.size() == 2) piece.down = down_flag(args[1]);
    piece.position = 0;  // assigned from the slice order
    return piece;
  }
  if (name == "xp" || name == "xm" || name == "twp" || name == "twm") {
    need(1, 1);
    piece.kind = name == "xp"   ? PieceKind::CrossPos
                 : name == "xm" ? PieceKind::CrossNeg
                 : name == "twp" ? PieceKind::TwistPos
                                 : PieceKind::TwistNeg;
    piece.position = p.parse_int(args[0], argcol);
  } else if (name == "cup") {
    // cup(i, color) creates (V, V*); cup(i, color, down) creates (V*, V).
    need(2, 3);
    piece.position = p.parse_int(args[0], argcol);
    piece.color = color_arg(args[1]);
    piece.kind = args.size() == 3 && down_flag(args[2]) ? PieceKind::CupR : PieceKind::CupL;
  } else if (name == "cap") {
    // The duality map is read off the orientations of the two legs.
    need(1, 2);
    piece.kind = PieceKind::Cap;
    piece.position = p.parse_int(args[0], argcol);
    if (args.size() == 2) piece.color = color_arg(args[1]);
  } else if (name == "coupon") {
    need(2, 2);
    piece.kind = PieceKind::Coupon;
    piece.position = p.parse_int(args[0], argcol);
    if (!valid_name(args[1])) p.fail("invalid coupon name '" + args[1] + "'", argcol);
    piece.coupon = args[1];
  } else {
    p.fail("unknown piece '" + name + "'", tok.column);
  }
  if (piece.position < 1) p.fail("positions are 1-based", argcol);
  return piece;
}

}  // namespace

TangleDocument parse(std::string_view text) {
  TangleDocument doc;
  std::optional<TangleDiagram> diagram;
  std::optional<ColoredBraid> braid;
  bool saw_ctx = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    LineParser p(tokenize(raw, line_no), line_no);
    const auto& toks = p.tokens();
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;

    if (kw == "ctx") {
      if (saw_ctx) p.fail("duplicate ctx line", toks[0].column);
      saw_ctx = true;
      auto kv = p.keyed(1, {"m", "l"});
      if (kv.count("m")) doc.m = p.parse_int(kv["m"].first, kv["m"].second);
      if (kv.count("l")) doc.l = p.parse_int(kv["l"].first, kv["l"].second);
    } else if (kw == "color") {
      if (toks.size() < 2 || !valid_name(toks[1].text))
        p.fail("expected a color name", toks.size() < 2 ? toks[0].column : toks[1].column);
      const std::string name = toks[1].text;
      if (doc.colors.count(name)) p.fail("color '" + name + "' defined twice", toks[1].column);
      auto kv = p.keyed(2, {"z", "k"});
      if (!kv.count("z") || !kv.count("k")) p.fail("color needs z= and k=", toks[0].column);
      const auto parts = split_commas(kv["z"].first);
      if (parts.empty() || parts.size() > 2) p.fail("z must be re or re,im", kv["z"].second);
      const double re = p.parse_double(parts[0], kv["z"].second);
      const double im = parts.size() == 2 ? p.parse_double(parts[1], kv["z"].second) : 0.0;
      doc.colors[name] = Color{cplx(re, im), p.parse_int(kv["k"].first, kv["k"].second)};
    } else if (kw == "ref") {
      if (toks.size() != 2 || !valid_name(toks[1].text)) p.fail("expected 'ref <color>'", toks[0].column);
      doc.reference = toks[1].text;
    } else if (kw == "coupons") {
      if (toks.size() != 2) p.fail("expected 'coupons <path>'", toks[0].column);
      doc.coupons_path = toks[1].text;
    } else if (kw == "braid") {
      if (braid || diagram) p.fail("only one braid or slice diagram per file", toks[0].column);
      auto kv = p.keyed(1, {"n", "word", "colors", "twists", "cut"});
      if (!kv.count("n") || !kv.count("word") || !kv.count("colors"))
        p.fail("braid needs n=, word= and colors=", toks[0].column);
      ColoredBraid b;
      b.strands = p.parse_int(kv["n"].first, kv["n"].second);
      if (b.strands < 1) p.fail("n must be positive", kv["n"].second);
      for (const auto& w : p.parse_list(toks[0], kv["word"].first, kv["word"].second)) {
        const int g = p.parse_int(w, kv["word"].second);
        if (g == 0 || std::abs(g) >= b.strands)
          p.fail("generator " + w + " out of range for " + std::to_string(b.strands) + " strands",
                 kv["word"].second);
        b.word.push_back(g);
      }
      for (const auto& c : p.parse_list(toks[0], kv["colors"].first, kv["colors"].second)) {
        if (!valid_name(c)) p.fail("invalid color name '" + c + "'", kv["colors"].second);
        b.colors.push_back(c);
      }
      if (kv.count("twists"))
        for (const auto& t : p.parse_list(toks[0], kv["twists"].first, kv["twists"].second))
          b.twists.push_back(p.parse_int(t, kv["twists"].second));
      if (kv.count("cut")) b.cut = p.parse_int(kv["cut"].first, kv["cut"].second);
      // Shape checks that need the whole braid.
      try {
        const auto comps = braid_components(b);
        strand_colors(b);
        component_twists(b);
        if (b.cut < 0 || b.cut >= static_cast<int>(comps.size()))
          p.fail("cut must name one of the " + std::to_string(comps.size()) + " components",
                 kv.count("cut") ? kv["cut"].second : toks[0].column);
      } catch (const DiagramError& e) {
        p.fail(e.what(), toks[0].column);
      }
      braid = std::move(b);
    } else if (kw == "slice") {
      if (braid) p.fail("only one braid or slice diagram per file", toks[0].column);
      if (!diagram) diagram.emplace();
      Slice slice;
      slice.line = line_no;
      bool all_id = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        Piece piece = parse_piece(p, toks[i]);
        if (piece.kind == PieceKind::Id) piece.position = static_cast<int>(slice.pieces.size()) + 1;
        all_id = all_id && piece.kind == PieceKind::Id;
        slice.pieces.push_back(std::move(piece));
      }
      if (slice.pieces.empty()) p.fail("empty slice", toks[0].column);
      if (!all_id) {
        for (const auto& piece : slice.pieces)
          if (piece.kind == PieceKind::Id)
            p.fail("id pieces only appear in boundary slices", piece.column);
      }
      // A leading all-id slice declares the input boundary.
      if (all_id && diagram->slices.empty() && diagram->input.empty()) {
        for (const auto& piece : slice.pieces) diagram->input.push_back({piece.color, piece.down});
      } else {
        diagram->slices.push_back(std::move(slice));
      }
    } else {
      p.fail("unknown directive '" + kw + "'", toks[0].column);
    }
  }

  if (braid) {
    for (const auto& c : braid->colors)
      if (!doc.colors.count(c)) throw ParseError("undefined color '" + c + "'", 0, 0);
    doc.body = std::move(*braid);
  } else if (diagram) {
    auto check = [&](const std::string& c, int line, int col) {
      if (!doc.colors.count(c)) throw ParseError("undefined color '" + c + "'", line, col);
    };
    for (const auto& leg : diagram->input) check(leg.color, 0, 0);
    for (const auto& s : diagram->slices)
      for (const auto& piece : s.pieces)
        if (!piece.color.empty()) check(piece.color, s.line, piece.column);
    doc.body = std::move(*diagram);
  } else {
    throw ParseError("no braid or slice diagram", line_no, 0);
  }
  if (doc.reference && !doc.colors.count(*doc.reference))
    throw ParseError("undefined reference color '" + *doc.reference + "'", 0, 0);
  return doc;
}

namespace {

BoundarySignature parse_signature(const nlohmann::json& list, const std::string& where) {
  if (!list.is_array()) throw DiagramError(where + " must be a list of strand labels");
  BoundarySignature sig;
  for (const auto& item : list) {
    if (!item.is_string()) throw DiagramError(where + " entries must be strings");
    std::string s = item.get<std::string>();
    StrandLabel leg;
    if (!s.empty() && s.back() == '*') {
      leg.down = true;
      s.pop_back();
    }
    if (!valid_name(s)) throw DiagramError(where + ": invalid strand label '" + item.get<std::string>() + "'");
    leg.color = s;
    sig.push_back(leg);
  }
  return sig;
}

}  // namespace

std::map<std::string, Coupon> parse_coupons(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DiagramError("coupon file must be a JSON object");
  std::map<std::string, Coupon> out;
  for (const auto& [name, entry] : doc.items()) {
    const std::string where = "coupon '" + name + "'";
    if (!entry.is_object() || !entry.contains("rows") || !entry.contains("cols") || !entry.contains("entries"))
      throw DiagramError(where + " needs rows, cols and entries");
    const auto rows = entry.at("rows").get<long>();
    const auto cols = entry.at("cols").get<long>();
    const auto& entries = entry.at("entries");
    if (rows < 1 || cols < 1 || !entries.is_array() || static_cast<long>(entries.size()) != rows * cols)
      throw DiagramError(where + ": entries must hold rows*cols values");
    Coupon c;
    c.matrix.resize(rows, cols);
    for (long r = 0; r < rows; ++r)
      for (long q = 0; q < cols; ++q) {
        const auto& v = entries[r * cols + q];
        if (v.is_number()) {
          c.matrix(r, q) = v.get<double>();
        } else if (v.is_array() && v.size() == 2) {
          c.matrix(r, q) = cplx(v[0].get<double>(), v[1].get<double>());
        } else {
          throw DiagramError(where + ": entries must be numbers or [re, im] pairs");
        }
      }
    c.domain = parse_signature(entry.value("domain", nlohmann::json::array()), where + " domain");
    c.codomain = parse_signature(entry.value("codomain", nlohmann::json::array()), where + " codomain");
    out[name] = std::move(c);
  }
  return out;
}

nlohmann::json coupon_to_json(const std::string& name, const Coupon& coupon) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < coupon.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < coupon.matrix.cols(); ++c)
      entries.push_back({coupon.matrix(r, c).real(), coupon.matrix(r, c).imag()});
  auto labels = [](const BoundarySignature& sig) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& leg : sig) out.push_back(to_string(leg));
    return out;
  };
  nlohmann::json body;
  body["rows"] = coupon.matrix.rows();
  body["cols"] = coupon.matrix.cols();
  body["entries"] = std::move(entries);
  body["domain"] = labels(coupon.domain);
  body["codomain"] = labels(coupon.codomain);
  nlohmann::json out;
  out[name] = std::move(body);
  return out;
}

}  // namespace qsl2
