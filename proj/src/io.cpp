#include "filtspec/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "filtspec/errors.hpp"
#include "filtspec/homology.hpp"
#include "filtspec/props.hpp"
#include "filtspec/spectral.hpp"

namespace filtspec::io {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number;
  std::string text;  // comment-stripped
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    Line line{number, raw, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<int> parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

std::string join_tokens(const Line& line, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < line.tokens.size(); ++i) {
    if (i > from) out += " ";
    out += line.tokens[i].text;
  }
  return out;
}

// "key=value" field with a specific key, or error
std::string keyed_value(const std::string& file, const Line& line, std::size_t index,
                        const std::string& key) {
  if (index >= line.tokens.size())
    throw parse_error(file, line.number, 1, "missing " + key + "=<value>");
  const Token& tok = line.tokens[index];
  if (tok.text.rfind(key + "=", 0) != 0)
    throw parse_error(file, line.number, tok.column, "expected " + key + "=<value>");
  return tok.text.substr(key.size() + 1);
}

}  // namespace

Coefficient parse_coefficient(const Ring& ring, const std::string& text) {
  bool has_t = text.find('t') != std::string::npos;
  if (!ring.is_novikov() && has_t)
    throw std::invalid_argument("ring mismatch: Novikov coefficient '" + text + "' over ring " +
                                ring.to_string());
  if (!has_t) {
    auto q = parse_rational(text);
    if (!q) throw std::invalid_argument("malformed rational '" + text + "'");
    return Coefficient::from_rational(ring, *q);
  }
  // split into signed terms at '+'/'-' that do not follow '^'
  std::vector<CoeffTerm> terms;
  std::size_t start = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    start = 1;
  }
  std::size_t i = start;
  auto flush = [&](std::size_t end) {
    std::string piece = text.substr(start, end - start);
    if (piece.empty()) throw std::invalid_argument("malformed coefficient '" + text + "'");
    int power = 0;
    std::string scalar_text = piece;
    auto tpos = piece.find("t^");
    if (tpos != std::string::npos) {
      auto expo = parse_int(piece.substr(tpos + 2));
      if (!expo) throw std::invalid_argument("malformed exponent in '" + piece + "'");
      power = *expo;
      scalar_text = piece.substr(0, tpos);
      if (!scalar_text.empty() && scalar_text.back() == '*') scalar_text.pop_back();
      if (scalar_text.empty()) scalar_text = "1";
    } else if (piece.find('t') != std::string::npos) {
      throw std::invalid_argument("malformed coefficient '" + piece + "'");
    }
    auto q = parse_rational(scalar_text);
    if (!q) throw std::invalid_argument("malformed rational '" + scalar_text + "'");
    terms.push_back({power, negative ? -*q : *q});
  };
  for (; i < text.size(); ++i) {
    char c = text[i];
    if ((c == '+' || c == '-') && i > start && text[i - 1] != '^') {
      flush(i);
      negative = c == '-';
      start = i + 1;
    }
  }
  flush(text.size());
  return Coefficient::from_terms(ring, terms);
}

FilteredComplex parse_complex_text(const std::string& text, const std::string& filename,
                                   bool run_validation, const std::optional<Ring>& ring_override) {
  std::optional<Ring> ring;
  std::optional<FilteredComplex> cx;
  for (const Line& line : tokenize(text)) {
    const std::string& key = line.tokens[0].text;
    auto need = [&](std::size_t count) {
      if (line.tokens.size() != count)
        throw parse_error(filename, line.number, line.tokens[0].column,
                          "expected " + std::to_string(count - 1) + " fields after '" + key + "'");
    };
    if (key == "ring") {
      if (ring) throw parse_error(filename, line.number, line.tokens[0].column, "duplicate ring line");
      std::string descriptor = join_tokens(line, 1);
      auto parsed = Ring::parse(descriptor);
      if (!parsed)
        throw parse_error(filename, line.number, line.tokens.size() > 1 ? line.tokens[1].column : 1,
                          "unknown ring descriptor '" + descriptor + "'");
      ring = ring_override ? *ring_override : *parsed;
      cx.emplace(*ring);
      continue;
    }
    if (!cx)
      throw parse_error(filename, line.number, line.tokens[0].column,
                        "the ring must be declared before '" + key + "'");
    if (key == "gen") {
      need(4);
      const std::string& name = line.tokens[1].text;
      if (cx->find(name))
        throw parse_error(filename, line.number, line.tokens[1].column,
                          "duplicate generator '" + name + "'");
      auto deg = parse_int(keyed_value(filename, line, 2, "deg"));
      if (!deg)
        throw parse_error(filename, line.number, line.tokens[2].column, "malformed degree");
      auto action = parse_rational(keyed_value(filename, line, 3, "action"));
      if (!action)
        throw parse_error(filename, line.number, line.tokens[3].column, "malformed action");
      cx->add_generator(name, *deg, *action);
    } else if (key == "bnd") {
      need(4);
      auto src = cx->find(line.tokens[1].text);
      if (!src)
        throw parse_error(filename, line.number, line.tokens[1].column,
                          "unknown generator '" + line.tokens[1].text + "'");
      auto dst = cx->find(line.tokens[2].text);
      if (!dst)
        throw parse_error(filename, line.number, line.tokens[2].column,
                          "unknown generator '" + line.tokens[2].text + "'");
      try {
        cx->add_boundary(*src, *dst, parse_coefficient(cx->ring(), line.tokens[3].text));
      } catch (const std::invalid_argument& e) {
        throw parse_error(filename, line.number, line.tokens[3].column, e.what());
      }
    } else if (key == "window") {
      need(2);
      if (!cx->ring().is_novikov())
        throw parse_error(filename, line.number, line.tokens[0].column,
                          "window applies to Novikov rings only");
      auto colon = line.tokens[1].text.find(':');
      auto lo = colon == std::string::npos
                    ? std::nullopt
                    : parse_int(line.tokens[1].text.substr(0, colon));
      auto hi = colon == std::string::npos
                    ? std::nullopt
                    : parse_int(line.tokens[1].text.substr(colon + 1));
      if (!lo || !hi || *lo > *hi)
        throw parse_error(filename, line.number, line.tokens[1].column, "malformed window");
      cx->set_window(*lo, *hi);
    } else if (key == "tag") {
      cx->add_tag(join_tokens(line, 1));
    } else {
      throw parse_error(filename, line.number, line.tokens[0].column, "unknown key '" + key + "'");
    }
  }
  if (!cx) throw parse_error(filename, 1, 1, "empty complex description (no ring line)");
  if (run_validation) {
    ValidationReport report = validate(*cx);
    if (!report.ok()) throw validation_error(std::move(report));
  }
  return std::move(*cx);
}

FilteredComplex parse_complex(const std::filesystem::path& path, bool run_validation,
                              const std::optional<Ring>& ring_override) {
  return parse_complex_text(read_file(path), path.string(), run_validation, ring_override);
}

std::string emit_complex(const FilteredComplex& c) {
  std::ostringstream os;
  os << "ring " << c.ring().to_string() << "\n";
  for (int i = 0; i < c.size(); ++i) {
    const Generator& g = c.generator(i);
    os << "gen " << g.name << " deg=" << g.degree << " action=" << format_rational(g.action)
       << "\n";
  }
  for (int src = 0; src < c.size(); ++src)
    for (const auto& [dst, coeff] : c.column(src))
      os << "bnd " << c.generator(src).name << " " << c.generator(dst).name << " "
         << coeff.to_string() << "\n";
  if (c.window())
    os << "window " << c.window()->first << ":" << c.window()->second << "\n";
  for (const auto& tag : c.tags()) os << "tag " << tag << "\n";
  return os.str();
}

std::vector<NamedClass> parse_classes_text(const std::string& text, const std::string& filename,
                                           const FilteredComplex& cx) {
  std::vector<NamedClass> out;
  std::optional<std::string> name;
  int degree = 0;
  int header_line = 0;
  std::vector<std::pair<int, Coefficient>> support;
  auto flush = [&]() {
    if (!name) return;
    try {
      out.push_back({*name, ChainClass(cx, degree, std::move(support))});
    } catch (const std::exception& e) {
      throw parse_error(filename, header_line, 1,
                        "class '" + *name + "' is malformed: " + e.what());
    }
    support.clear();
    name.reset();
  };
  for (const Line& line : tokenize(text)) {
    const std::string& key = line.tokens[0].text;
    if (key == "cls") {
      flush();
      if (line.tokens.size() != 3)
        throw parse_error(filename, line.number, line.tokens[0].column,
                          "expected 'cls <name> deg=<int>'");
      name = line.tokens[1].text;
      header_line = line.number;
      auto deg = parse_int(keyed_value(filename, line, 2, "deg"));
      if (!deg)
        throw parse_error(filename, line.number, line.tokens[2].column, "malformed degree");
      degree = *deg;
    } else if (key == "term") {
      if (!name)
        throw parse_error(filename, line.number, line.tokens[0].column, "term before cls");
      if (line.tokens.size() != 3)
        throw parse_error(filename, line.number, line.tokens[0].column,
                          "expected 'term <gen> <coeff>'");
      auto gen = cx.find(line.tokens[1].text);
      if (!gen)
        throw parse_error(filename, line.number, line.tokens[1].column,
                          "unknown generator '" + line.tokens[1].text + "'");
      try {
        support.push_back({*gen, parse_coefficient(cx.ring(), line.tokens[2].text)});
      } catch (const std::invalid_argument& e) {
        throw parse_error(filename, line.number, line.tokens[2].column, e.what());
      }
    } else {
      throw parse_error(filename, line.number, line.tokens[0].column, "unknown key '" + key + "'");
    }
  }
  flush();
  return out;
}

std::vector<NamedClass> parse_classes(const std::filesystem::path& path,
                                      const FilteredComplex& cx) {
  return parse_classes_text(read_file(path), path.string(), cx);
}

namespace {

struct ParsedMapFile {
  Rational shift = 0;
  std::vector<MapEntry> entries;
};

ParsedMapFile parse_map_file(const std::filesystem::path& path, const FilteredComplex& src,
                             const FilteredComplex& dst) {
  std::string filename = path.string();
  ParsedMapFile out;
  bool header = false;
  for (const Line& line : tokenize(read_file(path))) {
    const std::string& key = line.tokens[0].text;
    if (key == "map") {
      header = true;
    } else if (key == "shift") {
      if (line.tokens.size() != 2)
        throw parse_error(filename, line.number, line.tokens[0].column, "expected 'shift <rational>'");
      auto s = parse_rational(line.tokens[1].text);
      if (!s) throw parse_error(filename, line.number, line.tokens[1].column, "malformed shift");
      out.shift = *s;
    } else if (key == "ent") {
      if (line.tokens.size() != 4)
        throw parse_error(filename, line.number, line.tokens[0].column,
                          "expected 'ent <src> <dst> <coeff>'");
      auto s = src.find(line.tokens[1].text);
      if (!s)
        throw parse_error(filename, line.number, line.tokens[1].column,
                          "unknown source generator '" + line.tokens[1].text + "'");
      auto d = dst.find(line.tokens[2].text);
      if (!d)
        throw parse_error(filename, line.number, line.tokens[2].column,
                          "unknown target generator '" + line.tokens[2].text + "'");
      try {
        out.entries.push_back({*s, *d, parse_coefficient(src.ring(), line.tokens[3].text)});
      } catch (const std::invalid_argument& e) {
        throw parse_error(filename, line.number, line.tokens[3].column, e.what());
      }
    } else {
      throw parse_error(filename, line.number, line.tokens[0].column, "unknown key '" + key + "'");
    }
  }
  if (!header) throw parse_error(filename, 1, 1, "missing 'map' header line");
  return out;
}

}  // namespace

FilteredMap parse_map(const std::filesystem::path& path, const FilteredComplex& src,
                      const FilteredComplex& dst) {
  ParsedMapFile parsed = parse_map_file(path, src, dst);
  return FilteredMap(src, dst, parsed.shift, std::move(parsed.entries));
}

SparseLinearMap parse_linear_map(const std::filesystem::path& path, const FilteredComplex& src,
                                 const FilteredComplex& dst) {
  ParsedMapFile parsed = parse_map_file(path, src, dst);
  return SparseLinearMap{&src, &dst, std::move(parsed.entries)};
}

ProductData parse_product(const std::filesystem::path& path, const FilteredComplex& f1,
                          const FilteredComplex& f2, const FilteredComplex& target) {
  std::string filename = path.string();
  ProductData out;
  out.factor1 = &f1;
  out.factor2 = &f2;
  out.target = &target;
  for (const Line& line : tokenize(read_file(path))) {
    const std::string& key = line.tokens[0].text;
    if (key == "slack") {
      if (line.tokens.size() != 2)
        throw parse_error(filename, line.number, line.tokens[0].column, "expected 'slack <rational>'");
      auto s = parse_rational(line.tokens[1].text);
      if (!s) throw parse_error(filename, line.number, line.tokens[1].column, "malformed slack");
      out.slack = *s;
    } else if (key == "unit") {
      if (line.tokens.size() != 2)
        throw parse_error(filename, line.number, line.tokens[0].column, "expected 'unit <gen>'");
      auto u = f1.find(line.tokens[1].text);
      if (!u)
        throw parse_error(filename, line.number, line.tokens[1].column,
                          "unknown generator '" + line.tokens[1].text + "'");
      out.unit = *u;
    } else if (key == "degshift") {
      if (line.tokens.size() != 2)
        throw parse_error(filename, line.number, line.tokens[0].column, "expected 'degshift <int>'");
      auto d = parse_int(line.tokens[1].text);
      if (!d) throw parse_error(filename, line.number, line.tokens[1].column, "malformed degshift");
      out.degree_shift = *d;
    } else if (key == "prod") {
      if (line.tokens.size() != 5)
        throw parse_error(filename, line.number, line.tokens[0].column,
                          "expected 'prod <g1> <g2> <gout> <coeff>'");
      auto g1 = f1.find(line.tokens[1].text);
      auto g2 = f2.find(line.tokens[2].text);
      auto g_out = target.find(line.tokens[3].text);
      if (!g1)
        throw parse_error(filename, line.number, line.tokens[1].column,
                          "unknown generator '" + line.tokens[1].text + "'");
      if (!g2)
        throw parse_error(filename, line.number, line.tokens[2].column,
                          "unknown generator '" + line.tokens[2].text + "'");
      if (!g_out)
        throw parse_error(filename, line.number, line.tokens[3].column,
                          "unknown generator '" + line.tokens[3].text + "'");
      try {
        out.entries.push_back(
            {*g1, *g2, *g_out, parse_coefficient(target.ring(), line.tokens[4].text)});
      } catch (const std::invalid_argument& e) {
        throw parse_error(filename, line.number, line.tokens[4].column, e.what());
      }
    } else {
      throw parse_error(filename, line.number, line.tokens[0].column, "unknown key '" + key + "'");
    }
  }
  return out;
}

Manifest parse_manifest(const std::filesystem::path& path) {
  Manifest manifest;
  manifest.base_dir = path.parent_path();
  manifest.filename = path.string();
  for (const Line& line : tokenize(read_file(path))) {
    ManifestJob job;
    job.command = line.tokens[0].text;
    job.line = line.number;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      const std::string& tok = line.tokens[i].text;
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw parse_error(manifest.filename, line.number, line.tokens[i].column,
                          "expected key=value, got '" + tok + "'");
      std::string key = tok.substr(0, eq);
      if (key == "expect") {
        // expect consumes the rest of the line verbatim
        auto pos = line.text.find("expect=");
        job.expect = line.text.substr(pos + 7);
        while (!job.expect->empty() && std::isspace(static_cast<unsigned char>(job.expect->back())))
          job.expect->pop_back();
        break;
      }
      job.args[key] = tok.substr(eq + 1);
    }
    manifest.jobs.push_back(std::move(job));
  }
  return manifest;
}

namespace {

struct JobResult {
  int status = 0;  // 0 pass, 1 violation, 2 input error
  std::vector<std::string> lines;
};

struct JobContext {
  const Manifest& manifest;
  const ManifestJob& job;

  std::filesystem::path resolve(const std::string& rel) const { return manifest.base_dir / rel; }

  std::string arg(const std::string& key) const {
    auto it = job.args.find(key);
    if (it == job.args.end())
      throw std::runtime_error("manifest line " + std::to_string(job.line) + ": missing " + key +
                               "=");
    return it->second;
  }

  std::optional<std::string> arg_opt(const std::string& key) const {
    auto it = job.args.find(key);
    if (it == job.args.end()) return std::nullopt;
    return it->second;
  }

  FilteredComplex load_complex(const std::string& key, bool run_validation = true) const {
    FilteredComplex c = parse_complex(resolve(arg(key)), run_validation);
    if (auto w = arg_opt("window")) {
      auto colon = w->find(':');
      if (colon == std::string::npos)
        throw std::runtime_error("malformed window '" + *w + "'");
      c.set_window(std::stoi(w->substr(0, colon)), std::stoi(w->substr(colon + 1)));
    }
    return c;
  }

  std::vector<ChainClass> load_classes(const std::string& key, const FilteredComplex& cx) const {
    if (auto path = arg_opt(key)) {
      std::vector<ChainClass> out;
      for (auto& named : parse_classes(resolve(*path), cx)) out.push_back(std::move(named.cls));
      return out;
    }
    return props::basis_classes(cx);
  }
};

std::vector<std::pair<ChainClass, ChainClass>> cross_pairs(const std::vector<ChainClass>& a,
                                                           const std::vector<ChainClass>& b) {
  std::vector<std::pair<ChainClass, ChainClass>> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back({x, y});
  return out;
}

std::vector<int> parse_powers(const std::optional<std::string>& csv) {
  if (!csv) return {-2, -1, 0, 1, 2};
  std::vector<int> out;
  std::istringstream is(*csv);
  std::string piece;
  while (std::getline(is, piece, ',')) out.push_back(std::stoi(piece));
  return out;
}

JobResult run_property_job(const JobContext& ctx) {
  const std::string& cmd = ctx.job.command;
  props::PropertyReport report;
  if (cmd == "finiteness" || cmd == "spectrality") {
    FilteredComplex c = ctx.load_complex("complex");
    auto classes = ctx.load_classes("classes", c);
    report = cmd == "finiteness" ? props::check_finiteness(c, classes)
                                 : props::check_spectrality(c, classes);
  } else if (cmd == "continuation") {
    FilteredComplex src = ctx.load_complex("complex");
    FilteredComplex dst = ctx.load_complex("complex2");
    FilteredMap f = parse_map(ctx.resolve(ctx.arg("map")), src, dst);
    report = props::check_continuation(f, ctx.load_classes("classes", src));
  } else if (cmd == "triangle" || cmd == "module") {
    FilteredComplex f1 = ctx.load_complex("complex");
    // alias the factors when no separate files are given, so that the unit
    // corollaries recognize a shared complex
    std::optional<FilteredComplex> f2_storage, f3_storage;
    const FilteredComplex* f2 = &f1;
    if (ctx.arg_opt("complex2")) {
      f2_storage = ctx.load_complex("complex2");
      f2 = &*f2_storage;
    }
    const FilteredComplex* target = f2;
    if (ctx.arg_opt("complex3")) {
      f3_storage = ctx.load_complex("complex3");
      target = &*f3_storage;
    }
    ProductData p = parse_product(ctx.resolve(ctx.arg("product")), f1, *f2, *target);
    auto pairs = cross_pairs(ctx.load_classes("classes", f1), ctx.load_classes("classes2", *f2));
    report = cmd == "triangle" ? props::check_triangle(p, pairs)
                               : props::check_module_structure(p, pairs);
  } else if (cmd == "duality") {
    FilteredComplex c = ctx.load_complex("complex");
    report = props::check_duality(c);
  } else if (cmd == "novikov") {
    FilteredComplex c = ctx.load_complex("complex");
    std::vector<ChainClass> classes;
    for (auto& named : parse_classes(ctx.resolve(ctx.arg("classes")), c))
      classes.push_back(std::move(named.cls));
    report = props::check_novikov_action(c, classes, parse_powers(ctx.arg_opt("powers")));
  } else if (cmd == "tensor") {
    FilteredComplex c1 = ctx.load_complex("complex");
    FilteredComplex c2 = ctx.arg_opt("complex2") ? ctx.load_complex("complex2") : c1;
    auto pairs = cross_pairs(ctx.load_classes("classes", c1), ctx.load_classes("classes2", c2));
    report = props::check_tensor(c1, c2, pairs);
  } else if (cmd == "diagonal") {
    FilteredComplex c = ctx.load_complex("complex");
    report = props::check_diagonal(c, ctx.load_classes("classes", c));
  } else if (cmd == "conjugation") {
    FilteredComplex src = ctx.load_complex("complex");
    FilteredComplex dst = ctx.load_complex("complex2");
    FilteredMap f = parse_map(ctx.resolve(ctx.arg("map")), src, dst);
    FilteredMap g = parse_map(ctx.resolve(ctx.arg("map2")), dst, src);
    SparseLinearMap h_src = parse_linear_map(ctx.resolve(ctx.arg("homotopy")), src, src);
    SparseLinearMap h_tgt = parse_linear_map(ctx.resolve(ctx.arg("homotopy2")), dst, dst);
    report = props::check_conjugation_stability(f, g, h_src, h_tgt,
                                                ctx.load_classes("classes", src));
  } else {
    throw std::runtime_error("unknown manifest command '" + cmd + "'");
  }
  JobResult result;
  result.status = report.ok() ? 0 : 1;
  std::istringstream is(report.to_string());
  std::string line;
  while (std::getline(is, line)) result.lines.push_back(line);
  return result;
}

JobResult run_compute_job(const JobContext& ctx) {
  const std::string& cmd = ctx.job.command;
  JobResult result;
  if (cmd == "validate") {
    FilteredComplex c = ctx.load_complex("complex", /*run_validation=*/false);
    ValidationReport report = validate(c);
    if (report.ok()) {
      result.lines.push_back("ok");
    } else {
      result.status = 1;
      std::istringstream is(report.to_string());
      std::string line;
      while (std::getline(is, line)) result.lines.push_back(line);
    }
  } else if (cmd == "homology") {
    FilteredComplex c = ctx.load_complex("complex");
    int degree = std::stoi(ctx.arg("degree"));
    HomologyBasis basis = homology(c, degree);
    std::string torsion;
    for (std::size_t i = 0; i < basis.torsion_part.size(); ++i) {
      if (i) torsion += ",";
      torsion += basis.torsion_part[i].second.str();
    }
    result.lines.push_back("rank=" + std::to_string(basis.rank()) + " torsion=" + torsion);
  } else if (cmd == "spectrum") {
    FilteredComplex c = ctx.load_complex("complex");
    result.lines.push_back(action_spectrum(c).to_string());
  } else if (cmd == "spectral" || cmd == "oracle") {
    FilteredComplex c = ctx.load_complex("complex");
    auto named = parse_classes(ctx.resolve(ctx.arg("classes")), c);
    std::string out;
    for (std::size_t i = 0; i < named.size(); ++i) {
      if (i) out += " ";
      SpectralValue v = cmd == "spectral" ? spectral_invariant(c, named[i].cls)
                                          : brute_force_invariant(c, named[i].cls);
      out += named[i].name + "=" + v.to_string();
    }
    result.lines.push_back(out);
  } else {
    return run_property_job(ctx);
  }
  return result;
}

}  // namespace

int run_manifest(const Manifest& manifest, std::ostream& out, Exec mode) {
  std::vector<JobResult> results(manifest.jobs.size());
  parallel_for(manifest.jobs.size(), mode, [&](std::size_t i) {
    JobContext ctx{manifest, manifest.jobs[i]};
    JobResult r;
    try {
      r = run_compute_job(ctx);
    } catch (const std::exception& e) {
      r.status = 2;
      r.lines = {std::string("error: ") + e.what()};
    }
    const auto& expect = manifest.jobs[i].expect;
    if (expect && r.status != 2) {
      std::string got = r.lines.empty() ? "" : r.lines[0];
      if (got != *expect) {
        r.status = std::max(r.status, 1);
        r.lines.push_back("expect-mismatch: got '" + got + "' want '" + *expect + "'");
      }
    }
    results[i] = std::move(r);
  });
  int exit_code = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    out << manifest.jobs[i].command << ":";
    for (std::size_t j = 0; j < results[i].lines.size(); ++j)
      out << (j == 0 ? " " : "\n") << results[i].lines[j];
    out << "\n";
    exit_code = std::max(exit_code, results[i].status);
  }
  return exit_code;
}

}  // namespace filtspec::io
