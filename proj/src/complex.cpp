#include "filtspec/complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "filtspec/errors.hpp"

namespace filtspec {

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : problems) {
    const char* kind = nullptr;
    switch (v.kind) {
      case Violation::Kind::duplicate_name: kind = "duplicate-name"; break;
      case Violation::Kind::degree: kind = "degree"; break;
      case Violation::Kind::action: kind = "action"; break;
      case Violation::Kind::dsquare: kind = "dsquare"; break;
    }
    os << kind << ": " << v.detail << "\n";
  }
  return os.str();
}

int FilteredComplex::add_generator(const std::string& name, int degree, const Rational& action) {
  int idx = size();
  gens_.push_back({name, degree, action});
  columns_.emplace_back();
  index_.emplace(name, idx);  // first occurrence wins; validate flags duplicates
  return idx;
}

void FilteredComplex::add_boundary(int src, int dst, const Coefficient& coeff) {
  if (src < 0 || src >= size() || dst < 0 || dst >= size())
    throw std::out_of_range("add_boundary: generator index out of range");
  if (coeff.ring() != ring_)
    throw ring_mismatch_error("add_boundary: coefficient ring " + coeff.ring().to_string() +
                              " does not match complex ring " + ring_.to_string());
  if (coeff.is_zero()) return;
  auto& col = columns_[src];
  auto it = std::lower_bound(col.begin(), col.end(), dst,
                             [](const auto& e, int d) { return e.first < d; });
  if (it != col.end() && it->first == dst) {
    it->second = add(it->second, coeff);
    if (it->second.is_zero()) col.erase(it);
  } else {
    col.insert(it, {dst, coeff});
  }
}

void FilteredComplex::add_boundary(const std::string& src, const std::string& dst,
                                   const Coefficient& coeff) {
  auto s = find(src);
  auto d = find(dst);
  if (!s || !d) throw std::out_of_range("add_boundary: unknown generator name");
  add_boundary(*s, *d, coeff);
}

void FilteredComplex::add_tag(const std::string& tag) {
  if (!has_tag(tag)) tags_.push_back(tag);
}

void FilteredComplex::set_window(int k_min, int k_max) {
  if (k_min > k_max) throw window_error("set_window: empty window");
  window_ = {k_min, k_max};
}

std::optional<int> FilteredComplex::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FilteredComplex::has_tag(const std::string& tag) const {
  return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
}

std::vector<Coefficient> FilteredComplex::boundary_of(const std::vector<Coefficient>& chain) const {
  std::vector<Coefficient> out(size(), Coefficient::zero(ring_));
  for (int src = 0; src < size(); ++src) {
    if (chain[src].is_zero()) continue;
    for (const auto& [dst, c] : columns_[src]) out[dst] = add(out[dst], mul(c, chain[src]));
  }
  return out;
}

std::optional<Rational> FilteredComplex::min_filtration_slack() const {
  std::optional<Rational> slack;
  const Rational& area = ring_.period_action();
  for (int src = 0; src < size(); ++src)
    for (const auto& [dst, c] : columns_[src])
      for (const auto& term : c.terms()) {
        Rational s = gens_[src].action - gens_[dst].action + Rational(term.power) * area;
        if (!slack || s < *slack) slack = s;
      }
  return slack;
}

bool FilteredComplex::operator==(const FilteredComplex& o) const {
  return ring_ == o.ring_ && gens_ == o.gens_ && columns_ == o.columns_ && tags_ == o.tags_ &&
         window_ == o.window_;
}

ValidationReport validate(const FilteredComplex& c) {
  ValidationReport report;
  const Ring& ring = c.ring();
  int period_degree = ring.is_novikov() ? ring.period_degree() : 0;
  Rational area = ring.is_novikov() ? ring.period_action() : Rational(0);

  std::unordered_map<std::string, int> seen;
  for (int i = 0; i < c.size(); ++i) {
    auto [it, fresh] = seen.emplace(c.generator(i).name, i);
    (void)it;
    if (!fresh)
      report.problems.push_back({Violation::Kind::duplicate_name, c.generator(i).name});
  }

  for (int src = 0; src < c.size(); ++src) {
    const Generator& u = c.generator(src);
    for (const auto& [dst, coeff] : c.column(src)) {
      const Generator& v = c.generator(dst);
      for (const auto& term : coeff.terms()) {
        if (v.degree - term.power * period_degree != u.degree - 1) {
          std::ostringstream os;
          os << u.name << " -> " << v.name << " (term t^" << term.power << "): weighted degree "
             << (v.degree - term.power * period_degree) << " != " << (u.degree - 1);
          report.problems.push_back({Violation::Kind::degree, os.str()});
        }
        if (!(v.action - Rational(term.power) * area < u.action)) {
          std::ostringstream os;
          os << u.name << " -> " << v.name << " (term t^" << term.power
             << "): action does not strictly decrease ("
             << format_rational(v.action - Rational(term.power) * area)
             << " >= " << format_rational(u.action) << ")";
          report.problems.push_back({Violation::Kind::action, os.str()});
        }
      }
    }
  }

  for (int src = 0; src < c.size(); ++src) {
    std::map<int, Coefficient> acc;
    for (const auto& [mid, c1] : c.column(src))
      for (const auto& [dst, c2] : c.column(mid)) {
        auto [it, fresh] = acc.emplace(dst, Coefficient::zero(ring));
        (void)fresh;
        it->second = add(it->second, mul(c2, c1));
      }
    for (const auto& [dst, value] : acc)
      if (!value.is_zero()) {
        std::ostringstream os;
        os << "d(d(" << c.generator(src).name << ")) has component " << value.to_string() << " at "
           << c.generator(dst).name;
        report.problems.push_back({Violation::Kind::dsquare, os.str()});
      }
  }
  return report;
}

FilteredComplex sublevel(const FilteredComplex& c, const std::optional<Rational>& threshold) {
  if (!threshold) return c;
  if (c.ring().is_novikov()) {
    auto w = c.window().value_or(std::pair<int, int>{0, 0});
    return sublevel(materialize_window(c, w.first, w.second), threshold);
  }
  FilteredComplex out(c.ring());
  std::vector<int> remap(c.size(), -1);
  for (int i = 0; i < c.size(); ++i) {
    const Generator& g = c.generator(i);
    if (g.action < *threshold) remap[i] = out.add_generator(g.name, g.degree, g.action);
  }
  for (int src = 0; src < c.size(); ++src) {
    if (remap[src] < 0) continue;
    for (const auto& [dst, coeff] : c.column(src))
      if (remap[dst] >= 0) out.add_boundary(remap[src], remap[dst], coeff);
  }
  for (const auto& t : c.tags()) out.add_tag(t);
  return out;
}

FilteredComplex dualize(const FilteredComplex& c) {
  FilteredComplex out(c.ring());
  for (int i = 0; i < c.size(); ++i) {
    const Generator& g = c.generator(i);
    out.add_generator(g.name + "^", -g.degree, -g.action);
  }
  for (int src = 0; src < c.size(); ++src) {
    const Generator& u = c.generator(src);
    (void)u;
    for (const auto& [dst, coeff] : c.column(src)) {
      // delta(v^) picks up <d u, v> with the sign (-1)^(k-1), k = deg(v)
      const Generator& v = c.generator(dst);
      Coefficient signed_coeff = (v.degree % 2 == 0) ? neg(coeff) : coeff;
      out.add_boundary(dst, src, signed_coeff);
    }
  }
  for (const auto& t : c.tags()) out.add_tag(t);
  if (c.window()) out.set_window(c.window()->first, c.window()->second);
  return out;
}

FilteredComplex tensor(const FilteredComplex& c1, const FilteredComplex& c2) {
  if (c1.ring() != c2.ring())
    throw ring_mismatch_error("tensor: factors over different rings (" + c1.ring().to_string() +
                              " vs " + c2.ring().to_string() + ")");
  FilteredComplex out(c1.ring());
  auto pair_index = [&](int i, int j) { return i * c2.size() + j; };
  for (int i = 0; i < c1.size(); ++i)
    for (int j = 0; j < c2.size(); ++j) {
      const Generator& a = c1.generator(i);
      const Generator& b = c2.generator(j);
      out.add_generator("(" + a.name + "," + b.name + ")", a.degree + b.degree,
                        a.action + b.action);
    }
  for (int i = 0; i < c1.size(); ++i)
    for (int j = 0; j < c2.size(); ++j) {
      for (const auto& [dst, coeff] : c1.column(i))
        out.add_boundary(pair_index(i, j), pair_index(dst, j), coeff);
      bool odd = c1.generator(i).degree % 2 != 0;
      for (const auto& [dst, coeff] : c2.column(j))
        out.add_boundary(pair_index(i, j), pair_index(i, dst), odd ? neg(coeff) : coeff);
    }
  if (c1.window() && c2.window())
    out.set_window(c1.window()->first + c2.window()->first,
                   c1.window()->second + c2.window()->second);
  return out;
}

FilteredComplex shift_actions(const FilteredComplex& c, const Rational& s) {
  FilteredComplex out(c.ring());
  for (int i = 0; i < c.size(); ++i) {
    const Generator& g = c.generator(i);
    out.add_generator(g.name, g.degree, g.action + s);
  }
  for (int src = 0; src < c.size(); ++src)
    for (const auto& [dst, coeff] : c.column(src)) out.add_boundary(src, dst, coeff);
  for (const auto& t : c.tags()) out.add_tag(t);
  if (c.window()) out.set_window(c.window()->first, c.window()->second);
  return out;
}

FilteredComplex perturb_actions(const FilteredComplex& c, const std::vector<Rational>& delta,
                                const Rational& eps) {
  if (static_cast<int>(delta.size()) != c.size())
    throw std::invalid_argument("perturb_actions: delta size mismatch");
  for (const auto& d : delta)
    if (abs(d) > eps) throw std::invalid_argument("perturb_actions: |delta| exceeds eps");
  FilteredComplex out(c.ring());
  for (int i = 0; i < c.size(); ++i) {
    const Generator& g = c.generator(i);
    out.add_generator(g.name, g.degree, g.action + delta[i]);
  }
  for (int src = 0; src < c.size(); ++src)
    for (const auto& [dst, coeff] : c.column(src)) out.add_boundary(src, dst, coeff);
  for (const auto& t : c.tags()) out.add_tag(t);
  if (c.window()) out.set_window(c.window()->first, c.window()->second);
  ValidationReport report = validate(out);
  if (!report.ok())
    throw filtration_error("perturb_actions: perturbation breaks the filtration\n" +
                           report.to_string());
  return out;
}

FilteredComplex novikov_lift(const FilteredComplex& base, int period_degree,
                             const Rational& period_action, int k_min, int k_max) {
  if (base.ring().is_novikov())
    throw unsupported_ring_error("novikov_lift: base complex is already over a Novikov ring");
  if (period_degree < 2) throw std::invalid_argument("novikov_lift: period degree must be >= 2");
  if (k_min > k_max) throw window_error("novikov_lift: empty window");
  Ring ring = Ring::novikov(base.ring(), period_degree, period_action);
  FilteredComplex out(ring);
  for (int i = 0; i < base.size(); ++i) {
    const Generator& g = base.generator(i);
    out.add_generator(g.name, g.degree, g.action);
  }
  for (int src = 0; src < base.size(); ++src)
    for (const auto& [dst, coeff] : base.column(src))
      out.add_boundary(src, dst, Coefficient::monomial(ring, 0, coeff.rational_value()));
  for (const auto& t : base.tags()) out.add_tag(t);
  out.set_window(k_min, k_max);
  return out;
}

FilteredComplex materialize_window(const FilteredComplex& c, int k_min, int k_max) {
  if (!c.ring().is_novikov())
    throw unsupported_ring_error("materialize_window: ring is not Novikov");
  if (k_min > k_max) throw window_error("materialize_window: empty window");
  Ring base = c.ring().base();
  int period_degree = c.ring().period_degree();
  const Rational& area = c.ring().period_action();
  FilteredComplex out(base);
  auto mono_index = [&](int k, int g) { return (k - k_min) * c.size() + g; };
  for (int k = k_min; k <= k_max; ++k)
    for (int g = 0; g < c.size(); ++g) {
      const Generator& gen = c.generator(g);
      out.add_generator(gen.name + "@" + std::to_string(k), gen.degree - k * period_degree,
                        gen.action - Rational(k) * area);
    }
  for (int k = k_min; k <= k_max; ++k)
    for (int src = 0; src < c.size(); ++src)
      for (const auto& [dst, coeff] : c.column(src))
        for (const auto& term : coeff.terms()) {
          int kt = k + term.power;
          if (kt < k_min || kt > k_max) continue;
          out.add_boundary(mono_index(k, src), mono_index(kt, dst),
                           Coefficient::from_rational(base, term.scalar));
        }
  for (const auto& t : c.tags()) out.add_tag(t);
  return out;
}

FilteredComplex diagonal_repackage(const FilteredComplex& c) {
  FilteredComplex out(c.ring());
  for (int i = 0; i < c.size(); ++i) {
    const Generator& g = c.generator(i);
    out.add_generator(g.name + "'", g.degree, g.action);
  }
  for (int src = 0; src < c.size(); ++src)
    for (const auto& [dst, coeff] : c.column(src)) out.add_boundary(src, dst, coeff);
  for (const auto& t : c.tags())
    if (t != "periodic-orbit-model") out.add_tag(t);
  out.add_tag("lagrangian-model");
  if (c.window()) out.set_window(c.window()->first, c.window()->second);
  return out;
}

namespace {
int weighted_degree(const FilteredComplex& cx, int gen, int power) {
  int n = cx.ring().is_novikov() ? cx.ring().period_degree() : 0;
  return cx.generator(gen).degree - power * n;
}
}  // namespace

ChainClass::ChainClass(const FilteredComplex& cx, int degree,
                       std::vector<std::pair<int, Coefficient>> support)
    : cx_(&cx), degree_(degree) {
  std::map<int, Coefficient> acc;
  for (auto& [gen, coeff] : support) {
    if (gen < 0 || gen >= cx.size()) throw std::out_of_range("ChainClass: generator index");
    if (coeff.ring() != cx.ring())
      throw ring_mismatch_error("ChainClass: coefficient ring does not match complex");
    auto [it, fresh] = acc.emplace(gen, Coefficient::zero(cx.ring()));
    (void)fresh;
    it->second = add(it->second, coeff);
  }
  for (auto& [gen, coeff] : acc) {
    if (coeff.is_zero()) continue;
    for (const auto& term : coeff.terms())
      if (weighted_degree(cx, gen, term.power) != degree)
        throw std::invalid_argument("ChainClass: term " + cx.generator(gen).name +
                                    " has weighted degree != " + std::to_string(degree));
    support_.push_back({gen, coeff});
  }
  auto image = cx.boundary_of(dense());
  for (int i = 0; i < cx.size(); ++i)
    if (!image[i].is_zero())
      throw not_a_cycle_error("ChainClass: d(chain) has component " + image[i].to_string() +
                              " at " + cx.generator(i).name);
}

ChainClass ChainClass::zero(const FilteredComplex& cx, int degree) {
  return ChainClass(cx, degree, {});
}

ChainClass ChainClass::from_chain(const FilteredComplex& cx, int degree,
                                  const std::vector<Coefficient>& chain) {
  std::vector<std::pair<int, Coefficient>> support;
  for (int i = 0; i < cx.size(); ++i)
    if (!chain[i].is_zero()) support.push_back({i, chain[i]});
  return ChainClass(cx, degree, std::move(support));
}

std::vector<Coefficient> ChainClass::dense() const {
  std::vector<Coefficient> out(cx_->size(), Coefficient::zero(cx_->ring()));
  for (const auto& [gen, coeff] : support_) out[gen] = coeff;
  return out;
}

bool ChainClass::operator==(const ChainClass& o) const {
  return cx_ == o.cx_ && degree_ == o.degree_ && support_ == o.support_;
}

ChainClass add_classes(const ChainClass& a, const ChainClass& b) {
  if (&a.complex() != &b.complex())
    throw std::invalid_argument("add_classes: classes on different complexes");
  if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree())
    throw std::invalid_argument("add_classes: degree mismatch");
  auto support = a.support();
  for (const auto& t : b.support()) support.push_back(t);
  int degree = a.is_zero() ? b.degree() : a.degree();
  return ChainClass(a.complex(), degree, std::move(support));
}

ChainClass scale_class(const Coefficient& r, const ChainClass& a) {
  std::vector<std::pair<int, Coefficient>> support;
  // Novikov weights shift the degree of every term uniformly for monomial r.
  int degree_shift = 0;
  if (!r.is_zero() && r.ring().is_novikov() && r.terms().size() == 1)
    degree_shift = -r.terms()[0].power * r.ring().period_degree();
  for (const auto& [gen, coeff] : a.support()) support.push_back({gen, mul(r, coeff)});
  return ChainClass(a.complex(), a.degree() + degree_shift, std::move(support));
}

ChainClass transport_by_name(const ChainClass& a, const FilteredComplex& target) {
  std::vector<std::pair<int, Coefficient>> support;
  for (const auto& [gen, coeff] : a.support()) {
    auto idx = target.find(a.complex().generator(gen).name);
    if (!idx) throw std::invalid_argument("transport_by_name: missing generator " +
                                          a.complex().generator(gen).name);
    support.push_back({*idx, coeff});
  }
  return ChainClass(target, a.degree(), std::move(support));
}

FilteredMap::FilteredMap(const FilteredComplex& src, const FilteredComplex& dst, Rational shift,
                         std::vector<MapEntry> entries)
    : src_(&src), dst_(&dst), shift_(std::move(shift)), entries_(std::move(entries)) {
  if (src.ring() != dst.ring())
    throw ring_mismatch_error("FilteredMap: source and target rings differ");
  const Rational& area = src.ring().period_action();
  for (const auto& e : entries_) {
    if (e.src < 0 || e.src >= src.size() || e.dst < 0 || e.dst >= dst.size())
      throw std::out_of_range("FilteredMap: entry index out of range");
    if (e.coeff.ring() != src.ring())
      throw ring_mismatch_error("FilteredMap: entry coefficient ring mismatch");
    for (const auto& term : e.coeff.terms()) {
      Rational target_action = dst.generator(e.dst).action - Rational(term.power) * area;
      if (target_action > src.generator(e.src).action + shift_)
        throw filtration_error("FilteredMap: entry " + src.generator(e.src).name + " -> " +
                               dst.generator(e.dst).name + " exceeds the shift bound");
    }
  }
  // chain-map identity d_target f = f d_source, checked column by column
  for (int g = 0; g < src.size(); ++g) {
    std::vector<Coefficient> unit(src.size(), Coefficient::zero(src.ring()));
    unit[g] = Coefficient::one(src.ring());
    auto lhs = dst.boundary_of(apply_dense(unit));
    auto rhs = apply_dense(src.boundary_of(unit));
    for (int i = 0; i < dst.size(); ++i)
      if (!(sub(lhs[i], rhs[i]).is_zero()))
        throw std::invalid_argument("FilteredMap: not a chain map (fails on " +
                                    src.generator(g).name + ")");
  }
}

std::vector<Coefficient> FilteredMap::apply_dense(const std::vector<Coefficient>& chain) const {
  std::vector<Coefficient> out(dst_->size(), Coefficient::zero(dst_->ring()));
  for (const auto& e : entries_) {
    if (chain[e.src].is_zero()) continue;
    out[e.dst] = add(out[e.dst], mul(e.coeff, chain[e.src]));
  }
  return out;
}

ChainClass FilteredMap::apply(const ChainClass& a) const {
  if (&a.complex() != src_) throw std::invalid_argument("FilteredMap::apply: class/complex mismatch");
  return ChainClass::from_chain(*dst_, a.degree(), apply_dense(a.dense()));
}

FilteredMap FilteredMap::identity(const FilteredComplex& src, const FilteredComplex& dst,
                                  const Rational& shift) {
  std::vector<MapEntry> entries;
  for (int i = 0; i < src.size(); ++i) {
    auto j = dst.find(src.generator(i).name);
    if (!j) throw std::invalid_argument("FilteredMap::identity: missing generator " +
                                        src.generator(i).name);
    entries.push_back({i, *j, Coefficient::one(src.ring())});
  }
  return FilteredMap(src, dst, shift, std::move(entries));
}

std::vector<Coefficient> SparseLinearMap::apply_dense(const std::vector<Coefficient>& chain) const {
  std::vector<Coefficient> out(dst->size(), Coefficient::zero(dst->ring()));
  for (const auto& e : entries) {
    if (chain[e.src].is_zero()) continue;
    out[e.dst] = add(out[e.dst], mul(e.coeff, chain[e.src]));
  }
  return out;
}

}  // namespace filtspec
