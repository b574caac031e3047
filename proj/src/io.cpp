#include "abelk/io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

namespace abelk {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

struct Pos {
  int line = 1;
  int col = 1;
};

[[noreturn]] void fail(Pos p, const std::string& msg) { throw ParseError(p.line, p.col, msg); }

// ---------------------------------------------------------------- lexing

enum class Tok { Atom, LBrace, RBrace, LBracket, RBracket, Comma, Colon, Sep, End };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
  bool glued = false;  // no whitespace before it
};

bool atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' || c == '/' || c == '-' || c == '+' ||
         c == '.';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  Pos p;
  int depth = 0;
  bool glued = false;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    auto push = [&](Tok k, std::string s) {
      out.push_back({k, std::move(s), p, glued});
      glued = true;
    };
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      if (depth == 0) push(Tok::Sep, "newline");
      ++i;
      ++p.line;
      p.col = 1;
      glued = false;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++p.col;
      glued = false;
      continue;
    }
    if (atom_char(c)) {
      std::size_t j = i;
      while (j < text.size() && atom_char(text[j])) ++j;
      push(Tok::Atom, text.substr(i, j - i));
      p.col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '{': push(Tok::LBrace, "{"); ++depth; break;
      case '}': push(Tok::RBrace, "}"); --depth; break;
      case '[': push(Tok::LBracket, "["); ++depth; break;
      case ']': push(Tok::RBracket, "]"); --depth; break;
      case ',': push(Tok::Comma, ","); break;
      case ':': push(Tok::Colon, ":"); break;
      case ';': push(Tok::Sep, ";"); break;
      default: fail(p, std::string("unexpected character '") + c + "'");
    }
    if (depth < 0) fail(p, "unbalanced closing bracket");
    ++i;
    ++p.col;
  }
  out.push_back({Tok::End, "end of input", p, false});
  return out;
}

// ---------------------------------------------------------------- values

struct Node {
  enum Kind { Atom, List, Map } kind = Atom;
  Pos pos;
  std::string text;               // atoms
  std::vector<Node> items;        // list elements or map values
  std::vector<std::string> keys;  // map keys
  std::vector<Pos> key_pos;
  std::vector<Node> arg;          // list glued to an atom: countable[2]
  std::string mult;               // trailing multiplicity of a list: x2
  Pos mult_pos;

  const Node* find(const std::string& key) const {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == key) return &items[i];
    return nullptr;
  }
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }

  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(peek().pos, "expected " + what + ", found '" + peek().text + "'");
    return take();
  }

  Node value() {
    const Token& t = peek();
    if (t.kind == Tok::LBrace) return map();
    if (t.kind == Tok::LBracket) return list();
    if (t.kind == Tok::Atom) {
      Node n;
      n.kind = Node::Atom;
      n.pos = t.pos;
      n.text = take().text;
      if (peek().kind == Tok::LBracket && peek().glued) n.arg.push_back(list());
      return n;
    }
    fail(t.pos, "expected a value, found '" + t.text + "'");
  }

 private:
  Node list() {
    Node n;
    n.kind = Node::List;
    n.pos = expect(Tok::LBracket, "'['").pos;
    if (peek().kind == Tok::RBracket) {
      take();
      return n;
    }
    for (;;) {
      Node item = value();
      if (item.kind == Node::List && peek().kind == Tok::Atom && peek().text.starts_with("x")) {
        item.mult_pos = peek().pos;
        item.mult = take().text.substr(1);
      }
      n.items.push_back(std::move(item));
      if (peek().kind == Tok::Comma) {
        take();
        continue;
      }
      expect(Tok::RBracket, "',' or ']'");
      return n;
    }
  }

  Node map() {
    Node n;
    n.kind = Node::Map;
    n.pos = expect(Tok::LBrace, "'{'").pos;
    if (peek().kind == Tok::RBrace) {
      take();
      return n;
    }
    for (;;) {
      const Token key = expect(Tok::Atom, "a key");
      if (n.find(key.text)) fail(key.pos, "duplicate key '" + key.text + "'");
      expect(Tok::Colon, "':'");
      n.keys.push_back(key.text);
      n.key_pos.push_back(key.pos);
      n.items.push_back(value());
      if (peek().kind == Tok::Comma) {
        take();
        continue;
      }
      expect(Tok::RBrace, "',' or '}'");
      return n;
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------- decoding

const std::regex integer_re("[-+]?[0-9]+");
const std::regex rational_re("[-+]?[0-9]+(/[0-9]+)?");

Integer to_int(const Node& n, const std::string& what) {
  if (n.kind != Node::Atom || !std::regex_match(n.text, integer_re)) fail(n.pos, "expected an integer " + what);
  return Integer(n.text[0] == '+' ? n.text.substr(1) : n.text);
}

long to_count(const Node& n, const std::string& what, long min) {
  const Integer v = to_int(n, what);
  if (v < min || v > Integer(1) << 30) fail(n.pos, what + " must be between " + std::to_string(min) + " and 2^30");
  return v.convert_to<long>();
}

Rational to_rat(const Node& n) {
  if (n.kind != Node::Atom || !std::regex_match(n.text, rational_re)) fail(n.pos, "expected a rational number");
  const auto slash = n.text.find('/');
  const std::string num = n.text.substr(0, slash);
  Integer a(num[0] == '+' ? num.substr(1) : num);
  Integer b = slash == std::string::npos ? Integer(1) : Integer(n.text.substr(slash + 1));
  if (b == 0) fail(n.pos, "zero denominator");
  return Rational(a, b);
}

Cardinal to_cardinal(const std::string& text, Pos pos, const std::string& what) {
  if (text == "omega") return Cardinal::omega();
  if (!std::regex_match(text, integer_re) || Integer(text) < 1)
    fail(pos, what + " must be a positive integer or 'omega'");
  return Cardinal::fin(Integer(text));
}

template <class Scalar, class F>
Matrix<Scalar> to_matrix(const Node& n, F entry) {
  if (n.kind != Node::List) fail(n.pos, "expected a matrix (list of rows)");
  const auto rows = static_cast<Eigen::Index>(n.items.size());
  if (rows == 0) fail(n.pos, "empty matrix");
  const auto cols = static_cast<Eigen::Index>(n.items[0].items.size());
  Matrix<Scalar> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Node& row = n.items[static_cast<std::size_t>(i)];
    if (row.kind != Node::List) fail(row.pos, "expected a row");
    if (static_cast<Eigen::Index>(row.items.size()) != cols) fail(row.pos, "ragged matrix row");
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = entry(row.items[static_cast<std::size_t>(j)]);
  }
  return m;
}

IntMatrix to_int_matrix(const Node& n) {
  return to_matrix<Integer>(n, [](const Node& e) { return to_int(e, "matrix entry"); });
}

std::vector<IntMatrix> to_matrix_list(const Node* n) {
  std::vector<IntMatrix> out;
  if (!n) return out;
  if (n->kind != Node::List) fail(n->pos, "expected a list of matrices");
  for (const auto& m : n->items) out.push_back(to_int_matrix(m));
  return out;
}

Supernatural to_supernatural(const Node& n) {
  if (n.kind != Node::List) fail(n.pos, "expected a list of prime powers like [2^inf, 3^1]");
  Supernatural s;
  Prime last = 0;
  for (const auto& item : n.items) {
    if (item.kind != Node::Atom) fail(item.pos, "expected a prime power p^e");
    const auto caret = item.text.find('^');
    if (caret == std::string::npos) fail(item.pos, "expected a prime power p^e");
    const std::string ps = item.text.substr(0, caret);
    const std::string es = item.text.substr(caret + 1);
    const Pos epos{item.pos.line, item.pos.col + static_cast<int>(caret) + 1};
    if (!std::regex_match(ps, std::regex("[0-9]+")) || !is_prime(Integer(ps)))
      fail(item.pos, "'" + ps + "' is not a prime");
    if (Integer(ps) > Integer(1) << 62) fail(item.pos, "prime too large");
    const Prime p = Integer(ps).convert_to<Prime>();
    if (p <= last) fail(item.pos, "primes must be listed in increasing order");
    last = p;
    Exponent e;
    if (es == "inf") {
      e = Exponent::infinite();
    } else {
      if (!std::regex_match(es, std::regex("[0-9]+")) || Integer(es) < 1 || Integer(es) > 1 << 20)
        fail(epos, "malformed exponent '" + es + "' (expected a positive integer or 'inf')");
      e = Exponent(std::stol(es));
    }
    s.set(p, e);
  }
  return s;
}

void allow_keys(const Node& n, std::initializer_list<const char*> allowed) {
  for (std::size_t i = 0; i < n.keys.size(); ++i) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || n.keys[i] == a;
    if (!ok) fail(n.key_pos[i], "unexpected key '" + n.keys[i] + "'");
  }
}

FreePart to_free(const Node& n) {
  if (n.kind != Node::Map) fail(n.pos, "expected a free-part spec such as {free: 2}");
  if (const Node* v = n.find("free")) {
    allow_keys(n, {"free"});
    return free_of_rank(to_count(*v, "free rank", 0));
  }
  if (const Node* v = n.find("rank1")) {
    allow_keys(n, {"rank1"});
    return FreePart{Rank1{tower_from_supernatural(to_supernatural(*v))}};
  }
  if (const Node* v = n.find("cd")) {
    allow_keys(n, {"cd"});
    if (v->kind != Node::List || v->items.empty()) fail(v->pos, "expected a nonempty list of types");
    CompletelyDecomposable cd;
    for (const auto& item : v->items) {
      const Cardinal m = item.mult.empty() ? Cardinal::fin(1) : to_cardinal(item.mult, item.mult_pos, "multiplicity");
      cd.terms.push_back(CdTerm{to_supernatural(item), m});
    }
    return FreePart{std::move(cd)};
  }
  if (const Node* v = n.find("tower")) {
    allow_keys(n, {"tower", "prefix", "period", "copies"});
    Tower t;
    t.rank = static_cast<int>(to_count(*v, "tower rank", 1));
    t.prefix = to_matrix_list(n.find("prefix"));
    t.period = to_matrix_list(n.find("period"));
    require_valid(t);
    TowerForm tf{std::move(t)};
    if (const Node* c = n.find("copies")) {
      if (c->kind != Node::Atom) fail(c->pos, "copies must be a positive integer or 'omega'");
      tf.copies = to_cardinal(c->text, c->pos, "copies");
    }
    return FreePart{std::move(tf)};
  }
  if (const Node* v = n.find("sum")) {
    allow_keys(n, {"sum"});
    if (v->kind != Node::List || v->items.empty()) fail(v->pos, "expected a nonempty list of free-part specs");
    DirectSum s;
    for (const auto& item : v->items) s.summands.push_back(to_free(item));
    return FreePart{std::move(s)};
  }
  fail(n.pos, "free-part spec needs one of the keys free, rank1, cd, tower, sum");
}

TorsionDesc to_torsion(const Node& n) {
  if (n.kind == Node::Atom && n.text == "trivial" && n.arg.empty()) return trivial_torsion();
  std::vector<Integer> orders;
  const Node* list = nullptr;
  bool countable = false;
  if (n.kind == Node::Atom && n.text == "countable") {
    countable = true;
    if (!n.arg.empty()) list = &n.arg.front();
  } else if (n.kind == Node::List) {
    list = &n;
  } else {
    fail(n.pos, "torsion must be 'trivial', 'countable', 'countable[..]' or a list of cyclic orders");
  }
  if (list) {
    for (const auto& item : list->items) {
      const Integer k = to_int(item, "cyclic order");
      if (k < (countable ? 2 : 1)) fail(item.pos, "cyclic order " + k.str() + " is too small");
      orders.push_back(k);
    }
  }
  if (countable) return CountableTorsion{orders};
  return FiniteTorsion{from_cyclic_orders(orders)};
}

Witness to_witness(const Node& n) {
  if (n.kind != Node::Map) fail(n.pos, "expected a witness spec {copies, src, dst, map}");
  allow_keys(n, {"copies", "src", "dst", "map"});
  for (const char* k : {"src", "dst", "map"})
    if (!n.find(k)) fail(n.pos, std::string("witness is missing '") + k + "'");
  Witness w;
  if (const Node* c = n.find("copies")) w.copies = to_count(*c, "copies", 1);
  w.src = to_free(*n.find("src"));
  w.dst = to_free(*n.find("dst"));
  w.map = to_matrix<Rational>(*n.find("map"), to_rat);
  return w;
}

// ---------------------------------------------------------------- emitting

template <class Scalar>
std::string matrix_text(const Matrix<Scalar>& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + m(i, j).str();
    out += "]";
  }
  return out + "]";
}

std::string matrix_list_text(const std::vector<IntMatrix>& ms) {
  std::string out = "[";
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? ", " : "") + matrix_text(ms[i]);
  return out + "]";
}

}  // namespace

Document parse_document(const std::string& text) {
  Parser p(lex(text));
  Document doc;
  std::optional<NamedGroup> cur;
  bool has_torsion = false;
  bool has_free = false;
  auto flush = [&] {
    if (cur) doc.groups.push_back(std::move(*cur));
    cur.reset();
    has_torsion = has_free = false;
  };
  for (;;) {
    while (p.peek().kind == Tok::Sep) p.take();
    if (p.peek().kind == Tok::End) break;
    const Token key = p.expect(Tok::Atom, "a statement key");
    p.expect(Tok::Colon, "':'");
    const Node v = p.value();
    if (key.text == "name") {
      if (v.kind != Node::Atom) fail(v.pos, "expected an identifier");
      flush();
      cur = NamedGroup{v.text, {}};
    } else if (key.text == "torsion" || key.text == "free") {
      if (!cur) cur = NamedGroup{"group" + std::to_string(doc.groups.size() + 1), {}};
      bool& seen = key.text == "torsion" ? has_torsion : has_free;
      if (seen) fail(key.pos, "duplicate '" + key.text + "' for group " + cur->name);
      seen = true;
      if (key.text == "torsion")
        cur->desc.torsion = to_torsion(v);
      else
        cur->desc.free_part = to_free(v);
    } else if (key.text == "witness") {
      doc.witnesses.push_back(to_witness(v));
    } else {
      fail(key.pos, "unknown key '" + key.text + "' (expected name, torsion, free or witness)");
    }
    const Token& end = p.peek();
    if (end.kind != Tok::Sep && end.kind != Tok::End) fail(end.pos, "expected end of statement, found '" + end.text + "'");
  }
  flush();
  return doc;
}

NamedGroup parse_group_file(const std::string& text) {
  Document d = parse_document(text);
  if (d.groups.size() != 1)
    throw ParseError(1, 1, "expected exactly one group, found " + std::to_string(d.groups.size()));
  return std::move(d.groups.front());
}

FreePart parse_free_spec(const std::string& text) {
  Parser p(lex(text));
  FreePart f = to_free(p.value());
  while (p.peek().kind == Tok::Sep) p.take();
  if (p.peek().kind != Tok::End) fail(p.peek().pos, "trailing input");
  return f;
}

std::string emit_free(const FreePart& f) {
  return std::visit(
      overloaded{
          [](const FreeOfRank& x) { return "{free: " + std::to_string(x.rank) + "}"; },
          [](const Rank1& x) {
            return "{rank1: " + characteristic(x.tower, GroupElement{0, IntVector::Ones(1)}).str() + "}";
          },
          [](const CompletelyDecomposable& x) {
            std::string out = "{cd: [";
            for (std::size_t i = 0; i < x.terms.size(); ++i)
              out += (i ? ", " : "") + x.terms[i].type.str() + " x" + x.terms[i].multiplicity.str();
            return out + "]}";
          },
          [](const TowerForm& x) {
            std::string out = "{tower: " + std::to_string(x.tower.rank) + ", prefix: " +
                              matrix_list_text(x.tower.prefix) + ", period: " + matrix_list_text(x.tower.period);
            if (!(x.copies == Cardinal::fin(1))) out += ", copies: " + x.copies.str();
            return out + "}";
          },
          [](const DirectSum& x) {
            std::string out = "{sum: [";
            for (std::size_t i = 0; i < x.summands.size(); ++i) out += (i ? ", " : "") + emit_free(x.summands[i]);
            return out + "]}";
          },
      },
      f.value);
}

std::string emit_torsion(const TorsionDesc& t) {
  if (const auto* f = std::get_if<FiniteTorsion>(&t)) {
    if (f->group.invariant_factors().empty()) return "trivial";
    std::string out = "[";
    const auto& fs = f->group.invariant_factors();
    for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? ", " : "") + fs[i].str();
    return out + "]";
  }
  const auto& c = std::get<CountableTorsion>(t);
  if (c.listed_orders.empty()) return "countable";
  std::string out = "countable[";
  for (std::size_t i = 0; i < c.listed_orders.size(); ++i) out += (i ? ", " : "") + c.listed_orders[i].str();
  return out + "]";
}

std::string emit_group(const NamedGroup& g) {
  return "name: " + g.name + "\ntorsion: " + emit_torsion(g.desc.torsion) + "\nfree: " + emit_free(g.desc.free_part) +
         "\n";
}

std::string emit_witness(const Witness& w) {
  return "witness: {copies: " + std::to_string(w.copies) + ", src: " + emit_free(w.src) + ", dst: " + emit_free(w.dst) +
         ", map: " + matrix_text(w.map) + "}\n";
}

std::string emit_document(const Document& d) {
  std::string out;
  for (const auto& g : d.groups) out += emit_group(g);
  for (const auto& w : d.witnesses) out += emit_witness(w);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts) verdicts.push_back({{"label", v.label}, {"verdict", v.verdict}, {"evidence", v.evidence}});
  return {{"command", r.command},   {"inputs", r.inputs},       {"verdicts", verdicts},
          {"notices", r.notices},   {"timing_ms", r.timing_ms}};
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs").get<std::vector<std::string>>();
  for (const auto& v : j.at("verdicts"))
    r.verdicts.push_back({v.at("label").get<std::string>(), v.at("verdict").get<std::string>(),
                          v.at("evidence").get<std::string>()});
  r.notices = j.value("notices", std::vector<std::string>{});
  r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

std::string to_text(const Report& r) {
  std::string out = r.command;
  for (const auto& in : r.inputs) out += " " + in;
  out += "\n";
  for (const auto& v : r.verdicts) {
    out += v.label + ": " + v.verdict;
    if (!v.evidence.empty()) out += "  (" + v.evidence + ")";
    out += "\n";
  }
  for (const auto& n : r.notices) out += "notice: " + n + "\n";
  return out;
}

}  // namespace abelk
