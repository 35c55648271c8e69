#include "wavelab/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wavelab {

const char* base_field_name(BaseField b) {
  switch (b) {
    case BaseField::gamma_plus: return "gamma+";
    case BaseField::gamma_minus: return "gamma-";
    case BaseField::gamma_zero: return "gamma0";
    case BaseField::w1: return "w1";
    case BaseField::w2: return "w2";
  }
  return "?";
}

std::string graded_label(const GradedElement& e) {
  if (e.n == 0) return base_field_name(e.base);
  return "rho^-" + std::to_string(e.n) + "*" + base_field_name(e.base);
}

VectorField realize(const GradedElement& e, const GasParameters& g) {
  VectorField base;
  switch (e.base) {
    case BaseField::gamma_plus: base = gamma_plus(g); break;
    case BaseField::gamma_minus: base = gamma_minus(g); break;
    case BaseField::gamma_zero: base = gamma_zero(g); break;
    case BaseField::w1: base = transformed_basis(g).first; break;
    case BaseField::w2: base = transformed_basis(g).second; break;
  }
  if (e.n == 0) return base;
  return scale_field(ScalarField::rho_power(-e.n), base);
}

const StructureTable::Entry* StructureTable::find(int i, int j) const {
  const auto it = entries.find({i, j});
  return it == entries.end() ? nullptr : &it->second;
}

int StructureTable::index_of(const GradedElement& e) const {
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == e) return static_cast<int>(i);
  return -1;
}

std::string StructureTable::markdown() const {
  std::ostringstream os;
  os << "| bracket | expansion |\n|---|---|\n";
  for (const auto& [key, e] : entries) {
    os << "| [" << graded_label(basis[key.first]) << ", " << graded_label(basis[key.second])
       << "] | ";
    bool any = false;
    for (size_t k = 0; k < e.coeffs.size(); ++k) {
      if (std::abs(e.coeffs[k]) < 1e-9) continue;
      if (any) os << " + ";
      os << e.coeffs[k] << " " << graded_label(basis[k]);
      any = true;
    }
    if (!any) os << "0";
    if (e.truncated) os << " (truncated)";
    os << " |\n";
  }
  return os.str();
}

namespace {

struct FitContext {
  std::vector<StateVector> states;
  // realized values: values[e][sample] = Vec3
  std::vector<std::vector<Vec3>> columns;
  GasParameters g;

  std::vector<Vec3> evaluate(const VectorField& f) const {
    std::vector<Vec3> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(f.value(s));
    return out;
  }

  /// simultaneous least squares over all states: target ~ sum_k c_k column_k
  struct Fit {
    std::vector<double> coeffs;
    double rel_residual = 0.0;
  };
  Fit fit(const std::vector<Vec3>& target, const std::vector<int>& active_columns) const {
    const int m = static_cast<int>(states.size()) * 3;
    const int n = static_cast<int>(active_columns.size());
    std::vector<double> A(static_cast<size_t>(m) * n), b(m);
    double tnorm = 0.0;
    for (size_t s = 0; s < states.size(); ++s) {
      for (int c = 0; c < 3; ++c) {
        const int row = static_cast<int>(s) * 3 + c;
        b[row] = target[s][c];
        tnorm += target[s][c] * target[s][c];
        for (int k = 0; k < n; ++k) A[row * n + k] = columns[active_columns[k]][s][c];
      }
    }
    tnorm = std::sqrt(tnorm);
    const auto ls = dense_least_squares(m, n, std::move(A), std::move(b));
    Fit f;
    f.coeffs = ls.x;
    f.rel_residual = ls.residual / std::max(tnorm, 1e-300);
    return f;
  }
};

std::vector<GradedElement> candidate_dictionary(int max_grade) {
  std::vector<GradedElement> out;
  for (int n = 0; n <= max_grade; ++n)
    for (BaseField b : {BaseField::gamma_plus, BaseField::gamma_minus, BaseField::gamma_zero,
                        BaseField::w1, BaseField::w2})
      out.push_back({n, b});
  return out;
}

}  // namespace

StructureTable close_under_bracket(const std::vector<GradedElement>& seed_elements, int N,
                                   const GasParameters& g, int samples, std::uint64_t seed,
                                   double fit_tol) {
  if (N < 1) throw std::invalid_argument("close_under_bracket: N >= 1");
  StructureTable table;
  table.truncation = N;
  table.g = g;
  table.seed = seed;
  table.samples = samples;

  FitContext ctx;
  ctx.g = g;
  // moderate state band keeps the rho^-n columns well conditioned
  StateSampler sampler(seed, 0.5, 2.0, -2.0, 2.0);
  ctx.states = sampler.sample(samples);

  auto add_element = [&](const GradedElement& e) {
    table.basis.push_back(e);
    ctx.columns.push_back(ctx.evaluate(realize(e, g)));
  };
  for (const auto& e : seed_elements) {
    if (table.index_of(e) >= 0) continue;
    if (e.n > N) throw std::invalid_argument("seed element exceeds truncation grade");
    add_element(e);
  }

  std::vector<int> all_columns;
  auto refresh_all = [&]() {
    all_columns.resize(table.basis.size());
    for (size_t i = 0; i < all_columns.size(); ++i) all_columns[i] = static_cast<int>(i);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    refresh_all();
    const int nb = static_cast<int>(table.basis.size());
    for (int i = 0; i < nb && !changed; ++i) {
      for (int j = i + 1; j < nb && !changed; ++j) {
        if (table.find(i, j)) continue;
        const VectorField bracket =
            lie_bracket(realize(table.basis[i], g), realize(table.basis[j], g));
        const auto target = ctx.evaluate(bracket);
        auto fit = ctx.fit(target, all_columns);
        if (fit.rel_residual <= fit_tol) {
          table.entries[{i, j}] = {fit.coeffs, fit.rel_residual, false};
          table.max_residual = std::max(table.max_residual, fit.rel_residual);
          continue;
        }
        // search for one new graded element that closes this bracket; grades
        // above N are probed only to distinguish truncation from failure
        const int probe_grade =
            std::max(N, table.basis[i].n + table.basis[j].n) + 1;
        double best_res = fit.rel_residual;
        GradedElement best{};
        bool found = false, beyond = false;
        for (const auto& cand : candidate_dictionary(probe_grade)) {
          if (table.index_of(cand) >= 0) continue;
          const auto cvals = ctx.evaluate(realize(cand, g));
          // skip candidates pointwise dependent on the current basis
          const auto dep = ctx.fit(cvals, all_columns);
          if (dep.rel_residual <= 1e-10) continue;
          ctx.columns.push_back(cvals);
          std::vector<int> cols = all_columns;
          cols.push_back(static_cast<int>(ctx.columns.size()) - 1);
          const auto trial = ctx.fit(target, cols);
          ctx.columns.pop_back();
          if (trial.rel_residual <= fit_tol && trial.rel_residual < best_res) {
            best_res = trial.rel_residual;
            best = cand;
            found = true;
            beyond = cand.n > N;
            if (trial.rel_residual < 1e-12) break;
          }
        }
        if (!found)
          throw std::runtime_error("not closed in graded ansatz: [" +
                                   graded_label(table.basis[i]) + ", " +
                                   graded_label(table.basis[j]) + "] residual " +
                                   std::to_string(fit.rel_residual));
        if (beyond) {
          // content beyond the truncation grade: keep the best in-basis fit, flagged
          table.entries[{i, j}] = {fit.coeffs, fit.rel_residual, true};
          continue;
        }
        add_element(best);
        changed = true;  // restart pair sweep with the enlarged basis
      }
    }
    if (changed) table.entries.clear();  // refit everything over the final basis
  }
  return table;
}

IdealReport ideal_check(const StructureTable& table,
                        const std::vector<GradedElement>& candidate) {
  IdealReport rep;
  std::vector<bool> in_cand(table.basis.size(), false);
  for (const auto& e : candidate) {
    const int idx = table.index_of(e);
    if (idx < 0) throw std::invalid_argument("ideal candidate not in basis: " + graded_label(e));
    in_cand[idx] = true;
  }
  const int nb = static_cast<int>(table.basis.size());
  rep.abelian = true;
  rep.ideal = true;
  for (int i = 0; i < nb; ++i) {
    for (int j = i + 1; j < nb; ++j) {
      const auto* e = table.find(i, j);
      if (!e) continue;
      if (e->truncated) {
        if (in_cand[i] || in_cand[j]) ++rep.truncated_pairs;
        continue;
      }
      if (in_cand[i] && in_cand[j]) {
        for (double c : e->coeffs) rep.max_internal_bracket =
            std::max(rep.max_internal_bracket, std::abs(c));
      }
      if (in_cand[i] || in_cand[j]) {
        for (size_t k = 0; k < e->coeffs.size(); ++k)
          if (!in_cand[k]) rep.max_leak = std::max(rep.max_leak, std::abs(e->coeffs[k]));
      }
    }
  }
  rep.abelian = rep.max_internal_bracket <= 1e-8;
  rep.ideal = rep.max_leak <= 1e-8;
  return rep;
}

QuotientFingerprint quotient_fingerprint(const StructureTable& table,
                                         const std::vector<GradedElement>& ideal) {
  std::vector<bool> in_ideal(table.basis.size(), false);
  for (const auto& e : ideal) {
    const int idx = table.index_of(e);
    if (idx < 0) throw std::invalid_argument("ideal element not in basis");
    in_ideal[idx] = true;
  }
  QuotientFingerprint fp;
  std::vector<int> qidx;
  for (size_t i = 0; i < table.basis.size(); ++i) {
    if (!in_ideal[i]) {
      qidx.push_back(static_cast<int>(i));
      fp.quotient_basis.push_back(table.basis[i]);
    }
  }
  const int q = static_cast<int>(qidx.size());
  fp.dim = q;

  // c[(a,b)] over quotient coordinates, ideal components dropped (mod ideal)
  std::map<std::pair<int, int>, std::vector<double>> cmap;
  for (int a = 0; a < q; ++a) {
    for (int b = a + 1; b < q; ++b) {
      const int i = std::min(qidx[a], qidx[b]);
      const int j = std::max(qidx[a], qidx[b]);
      const auto* e = table.find(i, j);
      if (!e)
        throw std::invalid_argument("quotient bracket missing from table");
      if (e->truncated)
        throw std::invalid_argument("quotient bracket is truncation-flagged; raise N");
      std::vector<double> c(q, 0.0);
      const double sign = qidx[a] == i ? 1.0 : -1.0;
      for (int k = 0; k < q; ++k) c[k] = sign * e->coeffs[qidx[k]];
      cmap[{a, b}] = c;
      fp.brackets[{a, b}] = c;
    }
  }

  std::vector<std::vector<double>> derived_vectors;
  for (const auto& [key, c] : cmap) derived_vectors.push_back(c);
  fp.derived_dim = span_rank(derived_vectors);

  // center: z with sum_i z_i [q_i, q_k] = 0 (mod ideal) for all k
  std::vector<std::vector<double>> columns(q);  // columns over i
  for (int i = 0; i < q; ++i) {
    std::vector<double>& col = columns[i];
    col.assign(static_cast<size_t>(q) * q, 0.0);
    for (int k = 0; k < q; ++k) {
      if (k == i) continue;
      const int a = std::min(i, k), b = std::max(i, k);
      const auto& c = cmap.at({a, b});
      const double sign = i == a ? 1.0 : -1.0;
      for (int m = 0; m < q; ++m) col[static_cast<size_t>(k) * q + m] = sign * c[m];
    }
  }
  fp.center_dim = q - span_rank(columns);
  return fp;
}

WittPatternReport witt_pattern_scan(const std::vector<GradedElement>& seed_elements, int N,
                                    const GasParameters& g, int samples, std::uint64_t seed) {
  WittPatternReport rep;
  rep.table = close_under_bracket(seed_elements, N, g, samples, seed);
  const auto& t = rep.table;

  for (BaseField base : {BaseField::gamma_plus, BaseField::gamma_minus, BaseField::gamma_zero,
                         BaseField::w1, BaseField::w2}) {
    std::vector<std::pair<int, int>> members;  // (grade, basis index)
    for (size_t i = 0; i < t.basis.size(); ++i)
      if (t.basis[i].base == base) members.emplace_back(t.basis[i].n, static_cast<int>(i));
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());

    WittPatternReport::FamilyResult fam;
    fam.base = base;
    double num = 0.0, den = 0.0, maxc = 0.0;
    struct Obs { double m, n, coeff; };
    std::vector<Obs> obs;
    bool structured = true;
    for (size_t a = 0; a < members.size(); ++a) {
      for (size_t b = a + 1; b < members.size(); ++b) {
        const int i = std::min(members[a].second, members[b].second);
        const int j = std::max(members[a].second, members[b].second);
        const auto* e = t.find(i, j);
        if (!e) continue;
        if (e->truncated) {
          ++fam.truncated_pairs;
          continue;
        }
        const double m = t.basis[i].n, n = t.basis[j].n;
        // expect support only on the grade m+n member of the same family
        double on_target = 0.0, off_target = 0.0;
        for (size_t k = 0; k < e->coeffs.size(); ++k) {
          const bool tgt = t.basis[k].base == base && t.basis[k].n == t.basis[i].n + t.basis[j].n;
          if (tgt)
            on_target = e->coeffs[k];
          else
            off_target = std::max(off_target, std::abs(e->coeffs[k]));
        }
        if (off_target > 1e-8) structured = false;
        maxc = std::max(maxc, std::abs(on_target));
        obs.push_back({m, n, on_target});
        num += on_target * (m - n);
        den += (m - n) * (m - n);
      }
    }
    if (maxc <= 1e-10) {
      fam.abelian = true;
      fam.pattern = false;
    } else if (structured && den > 0.0) {
      fam.c = num / den;
      for (const auto& o : obs)
        fam.fit_residual = std::max(fam.fit_residual, std::abs(o.coeff - fam.c * (o.m - o.n)));
      fam.pattern = fam.fit_residual <= 1e-6 * std::max(1.0, std::abs(fam.c));
    }
    rep.families.push_back(fam);
  }
  return rep;
}

}  // namespace wavelab
