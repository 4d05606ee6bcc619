#include "growth/language.hpp"

#include "growth/catalog.hpp"
#include "growth/error.hpp"

namespace growth {

namespace {

std::vector<std::string> default_names(std::size_t d) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back("z" + std::to_string(i + 1));
  return out;
}

std::vector<std::vector<std::size_t>> identity_groups(std::size_t d) {
  std::vector<std::vector<std::size_t>> g(d);
  for (std::size_t i = 0; i < d; ++i) g[i] = {i};
  return g;
}

std::vector<std::vector<std::size_t>> paired_groups(std::size_t m) {
  std::vector<std::vector<std::size_t>> g(m);
  for (std::size_t i = 0; i < m; ++i) g[i] = {i, i + m};
  return g;
}

Language free_group_language(int m, bool paired, const std::string& name) {
  Language lang;
  lang.name = name;
  const auto mm = static_cast<std::size_t>(m);
  lang.counting = free_group_unambiguous(m);
  lang.count_vars = paired ? VariableMap::paired(mm) : VariableMap::identity(2 * mm);
  lang.dim = lang.count_vars.nvars;
  lang.var_names = default_names(lang.dim);
  lang.series = cancel_binomial_factors(growth_series(*lang.counting, lang.count_vars));
  lang.tmap = free_group_ergodic(m);
  lang.lift_groups = paired ? paired_groups(mm) : identity_groups(2 * mm);
  if (paired && m == 2) lang.closed_form = ClosedForm::f2_delta;
  if (paired && m == 3) lang.rank3_closed_form = true;
  return lang;
}

}  // namespace

Automaton letter_automaton(const std::vector<std::string>& alphabet, const std::vector<std::vector<bool>>& allowed) {
  const std::size_t k = alphabet.size();
  if (allowed.size() != k) throw InvalidInput("allowed-pair table has wrong size");
  std::vector<Transition> transitions;
  for (std::size_t x = 0; x < k; ++x) {
    if (allowed[x].size() != k) throw InvalidInput("allowed-pair table has wrong size");
    for (std::size_t y = 0; y < k; ++y)
      if (allowed[x][y]) transitions.push_back({x, y, y});
  }
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  return Automaton(alphabet, alphabet, std::move(transitions), all, all);
}

Language make_language(const LanguageSpec& spec) {
  if (spec.name == "fibonacci") {
    Language lang;
    lang.name = spec.name;
    lang.dim = 2;
    lang.var_names = default_names(2);
    lang.counting = fibonacci_automaton();
    lang.count_vars = VariableMap::identity(2);
    lang.series = cancel_binomial_factors(growth_series(*lang.counting));
    lang.tmap = lang.counting;
    lang.lift_groups = identity_groups(2);
    lang.closed_form = ClosedForm::fibonacci;
    return lang;
  }
  if (spec.name == "free_monoid") {
    if (spec.d < 1) throw InvalidInput("free monoid needs d >= 1");
    const auto d = static_cast<std::size_t>(spec.d);
    Language lang;
    lang.name = spec.name;
    lang.dim = d;
    lang.var_names = default_names(d);
    lang.counting = free_monoid_automaton(spec.d);
    lang.count_vars = VariableMap::identity(d);
    lang.series = growth_series(*lang.counting);
    lang.tmap = letter_automaton(lang.counting->alphabet(), std::vector<std::vector<bool>>(d, std::vector<bool>(d, true)));
    lang.lift_groups = identity_groups(d);
    lang.closed_form = ClosedForm::free_monoid;
    return lang;
  }
  if (spec.name == "free_group_unambiguous") return free_group_language(spec.m, spec.paired, spec.name);
  if (spec.name == "free_group_ergodic") {
    Language lang;
    lang.name = spec.name;
    const auto mm = static_cast<std::size_t>(spec.m);
    lang.counting = free_group_ergodic(spec.m);
    lang.unambiguous = false;
    lang.count_vars = spec.paired ? VariableMap::paired(mm) : VariableMap::identity(2 * mm);
    lang.dim = lang.count_vars.nvars;
    lang.var_names = default_names(lang.dim);
    lang.series = cancel_binomial_factors(growth_series(*lang.counting, lang.count_vars));
    lang.tmap = lang.counting;
    lang.lift_groups = spec.paired ? paired_groups(mm) : identity_groups(2 * mm);
    if (spec.paired && spec.m == 2) lang.closed_form = ClosedForm::f2_delta;
    if (spec.paired && spec.m == 3) lang.rank3_closed_form = true;
    return lang;
  }
  if (spec.name == "f2_delta" || spec.name == "fm_delta") {
    const int m = spec.name == "f2_delta" ? 2 : spec.m;
    Language lang = free_group_language(m, true, spec.name);
    lang.series = delta_free_group(m);
    return lang;
  }
  throw InvalidInput("unknown language '" + spec.name + "'");
}

Language language_from_automaton(const Automaton& a, const std::string& name) {
  Language lang;
  lang.name = name;
  lang.dim = a.num_symbols();
  lang.var_names = default_names(lang.dim);
  lang.counting = a;
  lang.count_vars = VariableMap::identity(lang.dim);
  lang.unambiguous = a.deterministic() && a.initial().size() == 1;
  lang.series = cancel_binomial_factors(growth_series(a));
  lang.tmap = a;
  lang.lift_groups = identity_groups(lang.dim);
  return lang;
}

Direction lift_direction(const Language& lang, const Direction& r) {
  if (!lang.tmap) throw Inapplicable("language has no T-map automaton");
  if (r.dim() != lang.lift_groups.size()) throw InvalidInput("direction dimension does not match the language");
  std::vector<double> out(lang.tmap->num_symbols(), 0.0);
  for (std::size_t g = 0; g < lang.lift_groups.size(); ++g) {
    const auto& grp = lang.lift_groups[g];
    for (auto s : grp) out[s] = r[g] / static_cast<double>(grp.size());
  }
  return Direction::normalized(out);
}

bool method_applicable(const Language& lang, PsiMethod method) {
  switch (method) {
    case PsiMethod::boundary: {
      if (lang.series.denominator.constant_term() != 1) return false;
      for (const auto& [e, c] : lang.series.denominator.terms())
        if (total_degree(e) > 0 && c > 0) return false;
      return true;
    }
    case PsiMethod::tmap: {
      if (!lang.tmap) return false;
      const auto& a = *lang.tmap;
      return a.vertex_labeled() && is_ergodic(a) && adjacency(a).is_zero_one() && a.num_states() == a.num_symbols();
    }
    case PsiMethod::empirical: return lang.counting.has_value();
    case PsiMethod::closed_form: return lang.closed_form.has_value() || lang.rank3_closed_form;
  }
  return false;
}

ExtendedValue psi_by_method(const Language& lang, PsiMethod method, const Direction& r,
                            std::optional<CoefficientTable>* cache, std::size_t table_size) {
  if (r.dim() != lang.dim) throw InvalidInput("direction dimension does not match the language");
  switch (method) {
    case PsiMethod::boundary: return psi_boundary(lang.series.denominator, r);
    case PsiMethod::tmap: {
      if (!method_applicable(lang, PsiMethod::tmap)) throw Inapplicable("T-map route does not apply to this language");
      return psi_tmap(*lang.tmap, lift_direction(lang, r));
    }
    case PsiMethod::empirical: {
      if (!lang.counting) throw Inapplicable("no counting automaton");
      std::optional<CoefficientTable> local;
      auto& slot = cache ? *cache : local;
      if (!slot || slot->max_total() != table_size) {
        slot = coefficients_dp(*lang.counting, lang.count_vars, table_size, CountMode::log_domain);
      }
      return psi_empirical(*slot, r);
    }
    case PsiMethod::closed_form: {
      if (lang.closed_form) return psi_closed_form(*lang.closed_form, r);
      if (lang.rank3_closed_form) return psi_f3(r);
      throw Inapplicable("no closed form for this language");
    }
  }
  throw InvalidInput("unknown method");
}

}  // namespace growth
