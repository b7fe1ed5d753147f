// hallq: command-line front end for the semi-derived Hall algebra engine.
//
// Subcommands: cartan, euler, straighten, serre, hall, verify <suite>,
// limit, catalog.  All configuration is by flags; output is deterministic
// for identical configs and inputs, and every report echoes the resolved
// configuration.  Exit code is 0 iff every case passed and none errored.

#include "CLI11.hpp"
#include "json.hpp"

#include "hallq/hall.hpp"
#include "hallq/ncpoly.hpp"
#include "hallq/verify.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace hallq;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Small parsing helpers for flag values.
// ---------------------------------------------------------------------------
std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw CLI::ValidationError("empty integer list: " + s);
  return out;
}

DimVector parse_dimvec(const std::string& s, int n) {
  std::string body = s;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']')
      throw CLI::ValidationError("unterminated dimension vector: " + s);
    body = body.substr(1, body.size() - 2);
  }
  DimVector out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  if ((int)out.size() != n)
    throw CLI::ValidationError("dimension vector has wrong length: " + s);
  return out;
}

// ---------------------------------------------------------------------------
// Hall-element expression grammar (shared by `hall` and `limit`):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := scalar | C(mod) | Cs(mod) | b([..]) | bs([..]) | #id
//           | [expr, expr]  (commutator) | (expr)
//   mod    := S<i>[^k] ('+' S<i>[^k])*        (1-based vertices)
//   scalar := integer ['/' integer]
// Parsed into a small AST, then evaluated per HallContext (reduced star
// products) or on raw complex classes (twisted product, no reduction).
// ---------------------------------------------------------------------------
struct ExprNode {
  enum Kind { Sum, Prod, Commutator, Scalar, CMod, CsMod, BVec, BsVec, CatRef };
  Kind kind = Scalar;
  std::vector<ExprNode> kids;
  BigRat scalar = BigRat(1);
  std::vector<std::pair<int, int>> mods;  // (vertex0, power) for C/Cs
  std::vector<long long> vec;             // for b/bs
  int cat_id = -1;
};

class ExprParser {
 public:
  ExprParser(const std::string& text, int n_vertices)
      : s_(text), n_(n_vertices) {}

  ExprNode parse() {
    ExprNode e = parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("expression error at position " +
                                std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  long long integer() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  ExprNode parse_sum() {
    ExprNode out;
    out.kind = ExprNode::Sum;
    out.kids.push_back(parse_term());
    while (true) {
      if (eat('+')) {
        out.kids.push_back(parse_term());
      } else if (peek() == '-') {
        // Leave the '-' for the term parser's leading-scalar handling.
        ++pos_;
        ExprNode t = parse_term();
        ExprNode neg;
        neg.kind = ExprNode::Prod;
        ExprNode m1;
        m1.kind = ExprNode::Scalar;
        m1.scalar = BigRat(-1);
        neg.kids.push_back(m1);
        neg.kids.push_back(t);
        out.kids.push_back(neg);
      } else {
        break;
      }
    }
    return out.kids.size() == 1 ? out.kids[0] : out;
  }

  ExprNode parse_term() {
    ExprNode out;
    out.kind = ExprNode::Prod;
    out.kids.push_back(parse_factor());
    while (eat('*')) out.kids.push_back(parse_factor());
    return out.kids.size() == 1 ? out.kids[0] : out;
  }

  ExprNode parse_factor() {
    skip_ws();
    char c = peek();
    ExprNode out;
    if (c == '(') {
      eat('(');
      out = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return out;
    }
    if (c == '[') {
      eat('[');
      out.kind = ExprNode::Commutator;
      out.kids.push_back(parse_sum());
      if (!eat(',')) fail("expected ',' in commutator");
      out.kids.push_back(parse_sum());
      if (!eat(']')) fail("expected ']'");
      return out;
    }
    if (c == '#') {
      eat('#');
      out.kind = ExprNode::CatRef;
      out.cat_id = (int)integer();
      return out;
    }
    if (std::isdigit((unsigned char)c) || c == '-') {
      long long num = integer();
      out.kind = ExprNode::Scalar;
      if (eat('/')) {
        long long den = integer();
        out.scalar = BigRat(num, den);
      } else {
        out.scalar = BigRat(num);
      }
      return out;
    }
    if (c == 'C') {
      ++pos_;
      bool dual = false;
      if (peek() == 's') {
        ++pos_;
        dual = true;
      }
      if (!eat('(')) fail("expected '(' after C/Cs");
      out.kind = dual ? ExprNode::CsMod : ExprNode::CMod;
      out.mods = parse_mod_sum();
      if (!eat(')')) fail("expected ')'");
      return out;
    }
    if (c == 'b') {
      ++pos_;
      bool dual = false;
      if (peek() == 's') {
        ++pos_;
        dual = true;
      }
      if (!eat('(')) fail("expected '(' after b/bs");
      if (!eat('[')) fail("expected '['");
      std::vector<long long> v;
      v.push_back(integer());
      while (eat(',')) v.push_back(integer());
      if (!eat(']')) fail("expected ']'");
      if (!eat(')')) fail("expected ')'");
      if ((int)v.size() != n_) fail("b-vector has wrong length");
      out.kind = dual ? ExprNode::BsVec : ExprNode::BVec;
      out.vec = v;
      return out;
    }
    fail("unexpected character");
  }

  std::vector<std::pair<int, int>> parse_mod_sum() {
    std::vector<std::pair<int, int>> out;
    do {
      skip_ws();
      if (peek() != 'S') fail("expected S<i> in module description");
      ++pos_;
      long long i = integer();
      if (i < 1 || i > n_) fail("vertex index out of range");
      long long k = 1;
      if (eat('^')) k = integer();
      if (k < 1) fail("module power must be positive");
      out.emplace_back((int)(i - 1), (int)k);
    } while (eat('+'));
    return out;
  }

  std::string s_;
  size_t pos_ = 0;
  int n_;
};

bool expr_is_raw_compatible(const ExprNode& e) {
  switch (e.kind) {
    case ExprNode::BVec:
    case ExprNode::BsVec:
      return false;
    default:
      break;
  }
  for (const auto& k : e.kids)
    if (!expr_is_raw_compatible(k)) return false;
  return true;
}

HallElement eval_reduced(const ExprNode& e, HallContext& ctx) {
  const Quiver& q = ctx.quiver();
  switch (e.kind) {
    case ExprNode::Sum: {
      HallElement out;
      for (const auto& k : e.kids) out = out + eval_reduced(k, ctx);
      return out;
    }
    case ExprNode::Prod: {
      HallElement out = ctx.unit();
      for (const auto& k : e.kids) out = ctx.star(out, eval_reduced(k, ctx));
      return out;
    }
    case ExprNode::Commutator: {
      HallElement a = eval_reduced(e.kids[0], ctx);
      HallElement b = eval_reduced(e.kids[1], ctx);
      return ctx.star(a, b) - ctx.star(b, a);
    }
    case ExprNode::Scalar:
      return ctx.unit() * QuadExt(e.scalar);
    case ExprNode::CMod:
    case ExprNode::CsMod: {
      std::vector<int> ids;
      for (auto [v, k] : e.mods)
        ids.push_back(ctx.catalog().module_power(v, k));
      if (e.kind == ExprNode::CMod)
        return ctx.basis_of_modules(ids, {}, q.zero());
      return ctx.basis_of_modules({}, ids, q.zero());
    }
    case ExprNode::BVec:
      return ctx.b_element(e.vec);
    case ExprNode::BsVec: {
      DimVector neg = e.vec;
      for (auto& x : neg) x = -x;
      return ctx.b_element(neg);
    }
    case ExprNode::CatRef: {
      if (e.cat_id < 0 || e.cat_id >= ctx.catalog().n_complexes())
        throw std::invalid_argument("catalog id out of range (run `catalog` "
                                    "first to enumerate within the same caps)");
      return ctx.reduce(HallContext::raw_delta(e.cat_id));
    }
  }
  throw std::logic_error("unreachable");
}

RawElement eval_raw(const ExprNode& e, HallContext& ctx) {
  const Quiver& q = ctx.quiver();
  switch (e.kind) {
    case ExprNode::Sum: {
      RawElement out;
      for (const auto& k : e.kids) {
        for (const auto& [id, c] : eval_raw(k, ctx)) {
          auto it = out.find(id);
          if (it == out.end()) {
            out.emplace(id, c);
          } else {
            it->second = it->second + c;
            if (it->second.is_zero()) out.erase(it);
          }
        }
      }
      return out;
    }
    case ExprNode::Prod: {
      bool first = true;
      RawElement out;
      for (const auto& k : e.kids) {
        RawElement v = eval_raw(k, ctx);
        out = first ? v : ctx.hall_product(out, v);
        first = false;
      }
      return out;
    }
    case ExprNode::Commutator: {
      RawElement a = eval_raw(e.kids[0], ctx);
      RawElement b = eval_raw(e.kids[1], ctx);
      RawElement ab = ctx.hall_product(a, b);
      for (const auto& [id, c] : ctx.hall_product(b, a)) {
        auto it = ab.find(id);
        if (it == ab.end()) {
          ab.emplace(id, -c);
        } else {
          it->second = it->second - c;
          if (it->second.is_zero()) ab.erase(it);
        }
      }
      return ab;
    }
    case ExprNode::Scalar: {
      int zid = ctx.catalog().cx_class(
          Cx2::c_of(q, semisimple_module(q, ctx.q(), q.zero())));
      return {{zid, QuadExt(e.scalar)}};
    }
    case ExprNode::CMod:
    case ExprNode::CsMod: {
      DimVector d = q.zero();
      for (auto [v, k] : e.mods) d[(size_t)v] += k;
      GenRep m = semisimple_module(q, ctx.q(), d);
      Cx2 x = e.kind == ExprNode::CMod ? Cx2::c_of(q, m) : Cx2::cstar_of(q, m);
      return HallContext::raw_delta(ctx.catalog().cx_class(x));
    }
    case ExprNode::CatRef:
      if (e.cat_id < 0 || e.cat_id >= ctx.catalog().n_complexes())
        throw std::invalid_argument("catalog id out of range");
      return HallContext::raw_delta(e.cat_id);
    default:
      throw std::invalid_argument("b-elements require --reduce");
  }
}

std::string raw_str(HallContext& ctx, const RawElement& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, c] : x) {
    const CxClassInfo& info = ctx.catalog().cx_info(id);
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*delta[#" << id << " dims "
       << dimvec_str(info.rep.alpha1()) << "|" << dimvec_str(info.rep.alpha0())
       << "]";
  }
  return os.str();
}

std::string classical_str(const ClassicalElement& x) {
  if (x.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x.terms) {
    std::ostringstream body;
    bool body_first = true;
    for (const auto& m : k.M) {
      body << (body_first ? "" : "*") << "C{" << m << "}";
      body_first = false;
    }
    for (const auto& n : k.N) {
      body << (body_first ? "" : "*") << "Cs{" << n << "}";
      body_first = false;
    }
    for (size_t i = 0; i < k.h_exp.size(); ++i) {
      if (k.h_exp[i] == 0) continue;
      body << (body_first ? "" : "*") << "h(" << i + 1 << ")";
      if (k.h_exp[i] != 1) body << "^" << k.h_exp[i];
      body_first = false;
    }
    std::string b = body_first ? "1" : body.str();
    if (!first) os << " + ";
    first = false;
    if (c == 1 && !body_first) {
      os << b;
    } else if (c == -1 && !body_first) {
      os << "-" << b;
    } else {
      os << c.str() << "*" << b;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Run configuration and output plumbing.
// ---------------------------------------------------------------------------
struct RunConfig {
  std::string quiver_path;
  std::string command;
  std::vector<int> qs = {4};
  int max_dim = 4;
  int lmax = 3;
  int degree_bound = 8;
  std::vector<int> samples = {4, 9, 25};
  std::string serre_sign = "signed";
  int threads = 1;
  std::string out_path;
  std::string format = "text";

  json to_json() const {
    return json{{"quiver", quiver_path}, {"command", command},
                {"q", qs},              {"max_dim", max_dim},
                {"lmax", lmax},         {"degree_bound", degree_bound},
                {"samples", samples},   {"serre_sign", serre_sign},
                {"threads", threads},   {"format", format}};
  }
  std::string echo_text() const {
    std::ostringstream os;
    os << "# config: command=" << command << " quiver=" << quiver_path
       << " q=";
    for (size_t i = 0; i < qs.size(); ++i) os << (i ? "," : "") << qs[i];
    os << " max-dim=" << max_dim << " lmax=" << lmax
       << " degree-bound=" << degree_bound << " samples=";
    for (size_t i = 0; i < samples.size(); ++i)
      os << (i ? "," : "") << samples[i];
    os << " serre-sign=" << serre_sign << " threads=" << threads;
    return os.str();
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw std::runtime_error("cannot open output file: " +
                                     cfg.out_path);
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
  }
}

Quiver load_quiver(const RunConfig& cfg) {
  if (cfg.quiver_path.empty())
    throw std::runtime_error("--quiver is required for this command");
  return Quiver::from_json_file(cfg.quiver_path);
}

Presentation make_presentation(const Quiver& q, const RunConfig& cfg) {
  Presentation pres;
  pres.cartan = cartan_matrix(q, cfg.lmax);
  pres.l_max = cfg.lmax;
  pres.serre_sign = cfg.serre_sign == "unsigned" ? SerreSign::unsigned_variant
                                                 : SerreSign::signed_variant;
  return pres;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each returns the process exit code.
// ---------------------------------------------------------------------------
int cmd_cartan(const RunConfig& cfg) {
  Quiver q = load_quiver(cfg);
  CartanData cd = cartan_matrix(q, cfg.lmax);
  if (cfg.format == "json") {
    json j{{"config", cfg.to_json()},
           {"matrix", cd.a},
           {"real_vertices", cd.real_vertices},
           {"imaginary_vertices", cd.imaginary_vertices},
           {"index_set", cd.index_set}};
    if (cd.charge) j["charge"] = *cd.charge;
    emit(cfg, j.dump(2));
    return 0;
  }
  std::ostringstream os;
  os << cfg.echo_text() << "\n";
  os << "cartan matrix (even symmetric Borcherds-Cartan):\n[";
  for (size_t i = 0; i < cd.a.size(); ++i) {
    os << (i ? "," : "") << "[";
    for (size_t j = 0; j < cd.a[i].size(); ++j)
      os << (j ? "," : "") << cd.a[i][j];
    os << "]";
  }
  os << "]\n";
  os << "real vertices (1-based): {";
  for (size_t i = 0; i < cd.real_vertices.size(); ++i)
    os << (i ? "," : "") << cd.real_vertices[i] + 1;
  os << "}\nimaginary vertices (1-based): {";
  for (size_t i = 0; i < cd.imaginary_vertices.size(); ++i)
    os << (i ? "," : "") << cd.imaginary_vertices[i] + 1;
  os << "}\nindex set preview (i,l):";
  for (auto [i, l] : cd.index_set) os << " (" << i + 1 << "," << l << ")";
  os << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_euler(const RunConfig& cfg, const std::string& alpha_s,
              const std::string& beta_s) {
  Quiver q = load_quiver(cfg);
  DimVector a = parse_dimvec(alpha_s, q.n());
  DimVector b = parse_dimvec(beta_s, q.n());
  long long ab = euler_form(q, a, b), ba = euler_form(q, b, a);
  if (cfg.format == "json") {
    json j{{"config", cfg.to_json()},
           {"euler_ab", ab},
           {"euler_ba", ba},
           {"sym", ab + ba}};
    emit(cfg, j.dump(2));
    return 0;
  }
  std::ostringstream os;
  os << cfg.echo_text() << "\n"
     << "<a,b> = " << ab << "\n<b,a> = " << ba << "\n(a,b) = " << ab + ba
     << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_straighten(const RunConfig& cfg, const std::string& expr) {
  Quiver q = load_quiver(cfg);
  Presentation pres = make_presentation(q, cfg);
  NCPoly p = parse_ncpoly(expr, pres);
  NCPoly nf = straighten(p, pres);
  if (cfg.format == "json") {
    json j{{"config", cfg.to_json()}, {"input", expr}, {"normal_form",
                                                        nf.str()}};
    emit(cfg, j.dump(2));
    return 0;
  }
  emit(cfg, cfg.echo_text() + "\n" + nf.str());
  return 0;
}

int cmd_serre(const RunConfig& cfg, int i, int j, long long l, char side) {
  Quiver q = load_quiver(cfg);
  std::vector<std::string> variants;
  if (cfg.serre_sign == "both") {
    variants = {"signed", "unsigned"};
  } else {
    variants = {cfg.serre_sign};
  }
  std::ostringstream os;
  json jout{{"config", cfg.to_json()}, {"sums", json::array()}};
  os << cfg.echo_text() << "\n";
  for (const std::string& v : variants) {
    RunConfig c2 = cfg;
    c2.serre_sign = v;
    Presentation pres = make_presentation(q, c2);
    NCPoly s = serre_sum(pres, side, i, j, l);
    os << v << " serre sum (side " << side << ", i=" << i + 1
       << ", j=" << j + 1 << ", l=" << l << "):\n  " << s.str() << "\n";
    jout["sums"].push_back(json{{"variant", v}, {"sum", s.str()}});
  }
  emit(cfg, cfg.format == "json" ? jout.dump(2) : os.str());
  return 0;
}

int cmd_hall(const RunConfig& cfg, const std::string& expr, bool reduce) {
  Quiver q = load_quiver(cfg);
  ExprParser parser(expr, q.n());
  ExprNode ast = parser.parse();
  if (!reduce && !expr_is_raw_compatible(ast))
    throw std::runtime_error("b-elements require --reduce");
  std::ostringstream os;
  json jout{{"config", cfg.to_json()}, {"results", json::array()}};
  os << cfg.echo_text() << "\n";
  for (int fq : cfg.qs) {
    HallContext ctx(q, fq);
    std::string line;
    if (reduce) {
      line = ctx.element_str(eval_reduced(ast, ctx));
    } else {
      line = raw_str(ctx, eval_raw(ast, ctx));
    }
    os << "q=" << fq << ": " << line << "\n";
    jout["results"].push_back(json{{"q", fq}, {"element", line}});
  }
  emit(cfg, cfg.format == "json" ? jout.dump(2) : os.str());
  return 0;
}

int cmd_limit(const RunConfig& cfg, const std::string& expr) {
  Quiver q = load_quiver(cfg);
  ExprParser parser(expr, q.n());
  ExprNode ast = parser.parse();
  SymElement sym =
      lift_symbolic(q, cfg.samples, cfg.degree_bound,
                    [&](HallContext& ctx) { return eval_reduced(ast, ctx); });
  ClassicalElement lim = classical_limit_hall(sym, q.n());
  std::string line = classical_str(lim);
  if (cfg.format == "json") {
    json jterms = json::array();
    for (const auto& [k, c] : lim.terms)
      jterms.push_back(json{{"M", k.M},
                            {"N", k.N},
                            {"h_exp", k.h_exp},
                            {"coeff", c.str()}});
    emit(cfg, json{{"config", cfg.to_json()}, {"limit", line},
                   {"terms", jterms}}
                  .dump(2));
    return 0;
  }
  emit(cfg, cfg.echo_text() + "\n" + line);
  return 0;
}

int cmd_catalog(const RunConfig& cfg) {
  Quiver q = load_quiver(cfg);
  int fq = cfg.qs.empty() ? 2 : cfg.qs[0];
  Catalog cat(q, fq);
  std::ostringstream os;
  json jout{{"config", cfg.to_json()}, {"classes", json::array()}};
  os << cfg.echo_text() << "\n";
  // Enumerate every (deg-1, deg-0) dimension pair within the cap.
  std::vector<DimVector> dims_list;
  DimVector cur(q.n() * 2, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == (int)cur.size()) {
      dims_list.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[(size_t)pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, cfg.max_dim);
  std::vector<int> seen;
  for (const DimVector& d : dims_list) {
    DimVector a1(d.begin(), d.begin() + q.n());
    DimVector a0(d.begin() + q.n(), d.end());
    for (const EnumeratedClass& ec : enumerate_complexes(cat, a1, a0)) {
      if (std::find(seen.begin(), seen.end(), ec.id) != seen.end()) continue;
      seen.push_back(ec.id);
    }
  }
  std::sort(seen.begin(), seen.end());
  for (int id : seen) {
    const CxClassInfo& info = cat.cx_info(id);
    os << "#" << id << " dims " << dimvec_str(info.rep.alpha1()) << "|"
       << dimvec_str(info.rep.alpha0()) << " gamma=" << info.gamma
       << (info.acyclic ? " acyclic" : "") << " |Aut|=" << info.aut.str()
       << " H0=" << cat.module_info(info.h0_mod).name
       << " H1=" << cat.module_info(info.h1_mod).name << "\n";
    jout["classes"].push_back(
        json{{"id", id},
             {"dims1", info.rep.alpha1()},
             {"dims0", info.rep.alpha0()},
             {"gamma", info.gamma},
             {"acyclic", info.acyclic},
             {"aut", info.aut.str()},
             {"h0", cat.module_info(info.h0_mod).name},
             {"h1", cat.module_info(info.h1_mod).name}});
  }
  emit(cfg, cfg.format == "json" ? jout.dump(2) : os.str());
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, int i, int j,
               int k, int l) {
  Quiver quiver = load_quiver(cfg);
  std::vector<VerificationReport> reports;

  auto run_for_q = [&](int fq) {
    std::vector<VerificationReport> out;
    if (suite == "eikfil") {
      out.push_back(verify_eikfil(quiver, i, k, l, fq));
    } else if (suite == "commutation") {
      out.push_back(verify_commutation(quiver, i, k, l, fq));
    } else if (suite == "serre") {
      if (cfg.serre_sign == "signed" || cfg.serre_sign == "both")
        out.push_back(
            verify_serre(quiver, i, j, l, fq, SerreSign::signed_variant));
      if (cfg.serre_sign == "unsigned" || cfg.serre_sign == "both")
        out.push_back(
            verify_serre(quiver, i, j, l, fq, SerreSign::unsigned_variant));
    } else if (suite == "b_relations") {
      out.push_back(verify_b_relations(quiver, fq));
    } else if (suite == "central_twist") {
      out.push_back(verify_central_twist(quiver, quiver.unit(i),
                                         quiver.unit(j), fq));
    } else {
      throw std::runtime_error("unknown suite: " + suite);
    }
    return out;
  };

  if (suite == "divided_power") {
    reports.push_back(
        verify_divided_power(quiver, "C_S", make_c_simple(i), k, cfg.samples));
  } else if (suite == "classical_bracket") {
    reports.push_back(verify_classical_bracket(quiver, i, cfg.samples));
  } else if (cfg.threads > 1 && cfg.qs.size() > 1) {
    std::vector<std::future<std::vector<VerificationReport>>> futs;
    for (int fq : cfg.qs)
      futs.push_back(std::async(std::launch::async, run_for_q, fq));
    for (auto& f : futs)
      for (auto& r : f.get()) reports.push_back(std::move(r));
  } else {
    for (int fq : cfg.qs)
      for (auto& r : run_for_q(fq)) reports.push_back(std::move(r));
  }

  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : reports) {
    pass += r.n_pass();
    fail += r.n_fail();
    skip += r.n_skip();
  }
  if (cfg.format == "json") {
    json jr = json::array();
    for (const auto& r : reports) jr.push_back(json::parse(r.to_json()));
    emit(cfg, json{{"config", cfg.to_json()},
                   {"reports", jr},
                   {"summary",
                    {{"pass", pass}, {"fail", fail}, {"skipped", skip}}}}
                  .dump(2));
  } else {
    std::ostringstream os;
    os << cfg.echo_text() << "\n";
    for (const auto& r : reports) os << r.to_text() << "\n";
    os << "total: " << pass << " pass, " << fail << " fail, " << skip
       << " skipped\n";
    emit(cfg, os.str());
  }
  return (fail == 0 && skip == 0 && pass > 0) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-derived Hall algebra toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string q_list = "4", sample_list = "4,9,25";
  int flag_i = 1, flag_j = 2, flag_k = 1, flag_l = 1;
  std::string side = "E";
  bool reduce = false;
  std::string expr, alpha_s, beta_s, suite;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--quiver", cfg.quiver_path, "quiver JSON file");
    sub->add_option("--q", q_list, "comma-separated field sizes");
    sub->add_option("--max-dim", cfg.max_dim, "total dimension cap");
    sub->add_option("--lmax", cfg.lmax, "imaginary-generator index cutoff");
    sub->add_option("--degree-bound", cfg.degree_bound,
                    "reconstruction degree bound");
    sub->add_option("--samples", sample_list,
                    "comma-separated perfect-square field sizes");
    sub->add_option("--serre-sign", cfg.serre_sign,
                    "signed|unsigned|both")
        ->check(CLI::IsMember({"signed", "unsigned", "both"}));
    sub->add_option("--threads", cfg.threads, "worker pool size");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* c_cartan = app.add_subcommand("cartan", "print Borcherds-Cartan data");
  add_common(c_cartan);

  CLI::App* c_euler = app.add_subcommand("euler", "evaluate Euler forms");
  add_common(c_euler);
  c_euler->add_option("alpha", alpha_s, "dimension vector, e.g. [1,0]")
      ->required();
  c_euler->add_option("beta", beta_s, "dimension vector")->required();

  CLI::App* c_str = app.add_subcommand("straighten",
                                       "normal form of a generator word");
  add_common(c_str);
  c_str->add_option("expr", expr, "expression, e.g. e(1,1)*f(1,1)")
      ->required();

  CLI::App* c_serre = app.add_subcommand("serre", "print Serre sums");
  add_common(c_serre);
  c_serre->add_option("--i", flag_i, "real vertex (1-based)");
  c_serre->add_option("--j", flag_j, "other vertex (1-based)");
  c_serre->add_option("--l", flag_l, "second index of (j,l)");
  c_serre->add_option("--side", side, "E|F")
      ->check(CLI::IsMember({"E", "F"}));

  CLI::App* c_hall = app.add_subcommand("hall", "evaluate a Hall expression");
  add_common(c_hall);
  c_hall->add_option("expr", expr, "e.g. \"C(S1)*Cs(S1)\"")->required();
  c_hall->add_flag("--reduce", reduce, "reduce onto the triangular basis");

  CLI::App* c_verify = app.add_subcommand("verify", "run a verification suite");
  add_common(c_verify);
  c_verify
      ->add_option("suite", suite,
                   "eikfil|commutation|serre|b_relations|central_twist|"
                   "divided_power|classical_bracket")
      ->required();
  c_verify->add_option("--i", flag_i, "vertex (1-based)");
  c_verify->add_option("--j", flag_j, "second vertex (1-based)");
  c_verify->add_option("--k", flag_k, "first power index");
  c_verify->add_option("--l", flag_l, "second power index");

  CLI::App* c_limit = app.add_subcommand("limit",
                                         "classical limit of an expression");
  add_common(c_limit);
  c_limit->add_option("expr", expr, "e.g. \"[C(S1),Cs(S1)]\"")->required();

  CLI::App* c_cat = app.add_subcommand("catalog",
                                       "enumerate complex classes within caps");
  add_common(c_cat);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.qs = parse_int_list(q_list);
    cfg.samples = parse_int_list(sample_list);
    if (c_cartan->parsed()) {
      cfg.command = "cartan";
      return cmd_cartan(cfg);
    }
    if (c_euler->parsed()) {
      cfg.command = "euler";
      return cmd_euler(cfg, alpha_s, beta_s);
    }
    if (c_str->parsed()) {
      cfg.command = "straighten";
      return cmd_straighten(cfg, expr);
    }
    if (c_serre->parsed()) {
      cfg.command = "serre";
      return cmd_serre(cfg, flag_i - 1, flag_j - 1, flag_l, side[0]);
    }
    if (c_hall->parsed()) {
      cfg.command = "hall";
      return cmd_hall(cfg, expr, reduce);
    }
    if (c_verify->parsed()) {
      cfg.command = "verify " + suite;
      return cmd_verify(cfg, suite, flag_i - 1, flag_j - 1, flag_k, flag_l);
    }
    if (c_limit->parsed()) {
      cfg.command = "limit";
      return cmd_limit(cfg, expr);
    }
    if (c_cat->parsed()) {
      cfg.command = "catalog";
      return cmd_catalog(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
