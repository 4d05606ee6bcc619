#include "growth/automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "growth/error.hpp"

namespace growth {

Automaton::Automaton(std::vector<std::string> alphabet, std::vector<std::string> states,
                     std::vector<Transition> transitions, std::vector<std::size_t> initial,
                     std::vector<std::size_t> final_states)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)),
      final_(std::move(final_states)) {
  if (alphabet_.empty()) throw InvalidInput("empty alphabet");
  if (states_.empty()) throw InvalidInput("no states declared");
  if (initial_.empty()) throw InvalidInput("empty initial set");
  if (final_.empty()) throw InvalidInput("empty final set");
  {
    std::set<std::string> seen;
    for (const auto& s : alphabet_)
      if (!seen.insert(s).second) throw InvalidInput("duplicate symbol '" + s + "'");
    seen.clear();
    for (const auto& s : states_)
      if (!seen.insert(s).second) throw InvalidInput("duplicate state '" + s + "'");
  }
  const std::size_t n = states_.size();
  initial_mask_.assign(n, false);
  final_mask_.assign(n, false);
  for (auto s : initial_) {
    if (s >= n) throw InvalidInput("unknown state in initial set");
    initial_mask_[s] = true;
  }
  for (auto s : final_) {
    if (s >= n) throw InvalidInput("unknown state in final set");
    final_mask_[s] = true;
  }
  std::sort(initial_.begin(), initial_.end());
  initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
  std::sort(final_.begin(), final_.end());
  final_.erase(std::unique(final_.begin(), final_.end()), final_.end());

  std::set<std::pair<std::size_t, std::size_t>> out_symbols;
  labels_.assign(n, std::nullopt);
  for (std::size_t k = 0; k < transitions_.size(); ++k) {
    const auto& t = transitions_[k];
    if (t.from >= n || t.to >= n) throw InvalidInput("transition " + std::to_string(k) + ": unknown state");
    if (t.symbol >= alphabet_.size()) {
      throw InvalidInput("transition " + std::to_string(k) + ": unknown symbol");
    }
    if (!out_symbols.emplace(t.from, t.symbol).second) deterministic_ = false;
    auto& lab = labels_[t.to];
    if (!lab) {
      lab = t.symbol;
    } else if (*lab != t.symbol) {
      vertex_labeled_ = false;
    }
  }
  if (!vertex_labeled_) labels_.assign(n, std::nullopt);
}

std::optional<std::size_t> Automaton::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Automaton::find_symbol(std::string_view name) const {
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == name) return i;
  return std::nullopt;
}

bool AdjacencyMatrix::is_zero_one() const {
  return std::all_of(entries.begin(), entries.end(), [](auto v) { return v == 0 || v == 1; });
}

std::vector<double> AdjacencyMatrix::as_double() const {
  return std::vector<double>(entries.begin(), entries.end());
}

AdjacencyMatrix adjacency(const Automaton& a) {
  AdjacencyMatrix m;
  m.n = a.num_states();
  m.entries.assign(m.n * m.n, 0);
  m.states = a.states();
  for (const auto& t : a.transitions()) m.at(t.from, t.to) += 1;
  return m;
}

namespace {

std::vector<bool> reach(std::size_t n, const std::vector<std::vector<std::size_t>>& adj,
                        const std::vector<std::size_t>& sources) {
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (auto s : sources) {
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (auto t : adj[s]) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_strongly_connected(const AdjacencyMatrix& m) {
  if (m.n == 0) return false;
  std::vector<std::vector<std::size_t>> fwd(m.n), bwd(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      if (m.at(i, j) > 0) {
        fwd[i].push_back(j);
        bwd[j].push_back(i);
      }
    }
  }
  auto f = reach(m.n, fwd, {0});
  auto b = reach(m.n, bwd, {0});
  for (std::size_t i = 0; i < m.n; ++i)
    if (!f[i] || !b[i]) return false;
  return true;
}

bool is_ergodic(const Automaton& a) { return is_strongly_connected(adjacency(a)); }

Automaton prune_dead_states(const Automaton& a) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<std::size_t>> fwd(n), bwd(n);
  for (const auto& t : a.transitions()) {
    fwd[t.from].push_back(t.to);
    bwd[t.to].push_back(t.from);
  }
  auto accessible = reach(n, fwd, a.initial());
  auto coaccessible = reach(n, bwd, a.final_states());
  std::vector<std::size_t> remap(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::string> states;
  for (std::size_t s = 0; s < n; ++s) {
    if (accessible[s] && coaccessible[s]) {
      remap[s] = states.size();
      states.push_back(a.states()[s]);
    }
  }
  if (states.empty()) throw InvalidInput("automaton accepts no word");
  if (states.size() == n) return a;
  constexpr auto gone = std::numeric_limits<std::size_t>::max();
  std::vector<Transition> transitions;
  for (const auto& t : a.transitions()) {
    if (remap[t.from] != gone && remap[t.to] != gone) {
      transitions.push_back({remap[t.from], t.symbol, remap[t.to]});
    }
  }
  std::vector<std::size_t> initial, final_states;
  for (auto s : a.initial())
    if (remap[s] != gone) initial.push_back(remap[s]);
  for (auto s : a.final_states())
    if (remap[s] != gone) final_states.push_back(remap[s]);
  return Automaton(a.alphabet(), std::move(states), std::move(transitions), std::move(initial),
                   std::move(final_states));
}

Automaton build_sft_automaton(const std::vector<std::string>& alphabet,
                              const std::vector<std::vector<std::string>>& forbidden) {
  if (alphabet.empty()) throw InvalidInput("empty alphabet");
  if (forbidden.empty()) throw InvalidInput("no forbidden words given");
  const std::size_t k = alphabet.size();
  std::map<std::string, std::size_t> symbol_index;
  for (std::size_t i = 0; i < k; ++i) symbol_index[alphabet[i]] = i;

  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> go{std::vector<std::size_t>(k, none)};
  std::vector<bool> terminal{false};
  std::vector<std::string> label{""};
  for (const auto& word : forbidden) {
    if (word.empty()) throw InvalidInput("empty forbidden word");
    std::size_t node = 0;
    for (const auto& sym : word) {
      auto it = symbol_index.find(sym);
      if (it == symbol_index.end()) throw InvalidInput("forbidden word uses unknown symbol '" + sym + "'");
      if (go[node][it->second] == none) {
        go[node][it->second] = go.size();
        go.emplace_back(k, none);
        terminal.push_back(false);
        label.push_back(label[node] + sym);
      }
      node = go[node][it->second];
    }
    terminal[node] = true;
  }

  std::vector<std::size_t> fail(go.size(), 0);
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue;
  for (std::size_t c = 0; c < k; ++c) {
    if (go[0][c] == none) {
      go[0][c] = 0;
    } else {
      fail[go[0][c]] = 0;
      queue.push_back(go[0][c]);
    }
  }
  order.push_back(0);
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    order.push_back(u);
    if (terminal[fail[u]]) terminal[u] = true;
    for (std::size_t c = 0; c < k; ++c) {
      auto v = go[u][c];
      if (v == none) {
        go[u][c] = go[fail[u]][c];
      } else {
        fail[v] = go[fail[u]][c];
        queue.push_back(v);
      }
    }
  }

  std::vector<std::size_t> index(go.size(), none);
  std::vector<std::string> states;
  for (auto u : order) {
    if (terminal[u]) continue;
    index[u] = states.size();
    states.push_back(u == 0 ? "root" : label[u]);
  }
  std::vector<Transition> transitions;
  for (auto u : order) {
    if (terminal[u]) continue;
    for (std::size_t c = 0; c < k; ++c) {
      auto v = go[u][c];
      if (!terminal[v]) transitions.push_back({index[u], c, index[v]});
    }
  }
  std::vector<std::size_t> all(states.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Automaton raw(alphabet, std::move(states), std::move(transitions), {0}, all);
  return prune_dead_states(raw);
}

Automaton build_sft_automaton(const std::vector<std::string>& alphabet,
                              const std::vector<std::string>& forbidden_words) {
  std::vector<std::vector<std::string>> split;
  for (const auto& w : forbidden_words) {
    std::vector<std::string> symbols;
    for (char ch : w) symbols.emplace_back(1, ch);
    split.push_back(std::move(symbols));
  }
  return build_sft_automaton(alphabet, split);
}

std::string generator_name(int i, bool inverse) {
  if (i < 0 || i >= 26) throw InvalidInput("generator index out of range");
  return std::string(1, static_cast<char>((inverse ? 'A' : 'a') + i));
}

Automaton fibonacci_automaton() {
  return Automaton({"a", "b"}, {"s1", "s2"}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}}, {0}, {0, 1});
}

Automaton free_monoid_automaton(int d) {
  if (d < 1) throw InvalidInput("free monoid needs d >= 1");
  if (d > 26) throw InvalidInput("free monoid supports at most 26 letters");
  std::vector<std::string> alphabet;
  std::vector<Transition> transitions;
  for (int i = 0; i < d; ++i) {
    alphabet.push_back(generator_name(i, false));
    transitions.push_back({0, static_cast<std::size_t>(i), 0});
  }
  return Automaton(alphabet, {"s0"}, transitions, {0}, {0});
}

namespace {

std::vector<std::string> free_group_alphabet(int m) {
  std::vector<std::string> alphabet;
  for (int i = 0; i < m; ++i) alphabet.push_back(generator_name(i, false));
  for (int i = 0; i < m; ++i) alphabet.push_back(generator_name(i, true));
  return alphabet;
}

void check_rank(int m) {
  if (m < 2) throw InvalidInput("free group rank must be at least 2");
  if (m > 26) throw InvalidInput("free group rank must be at most 26");
}

}  // namespace

Automaton free_group_unambiguous(int m) {
  check_rank(m);
  const auto k = static_cast<std::size_t>(2 * m);
  auto alphabet = free_group_alphabet(m);
  std::vector<std::string> states{"q0"};
  for (const auto& x : alphabet) states.push_back(x);
  std::vector<Transition> transitions;
  for (std::size_t y = 0; y < k; ++y) transitions.push_back({0, y, y + 1});
  for (std::size_t x = 0; x < k; ++x) {
    const std::size_t inv = (x + k / 2) % k;
    for (std::size_t y = 0; y < k; ++y)
      if (y != inv) transitions.push_back({x + 1, y, y + 1});
  }
  std::vector<std::size_t> all(k + 1);
  for (std::size_t i = 0; i <= k; ++i) all[i] = i;
  return Automaton(alphabet, std::move(states), std::move(transitions), {0}, all);
}

Automaton free_group_ergodic(int m) {
  check_rank(m);
  const auto k = static_cast<std::size_t>(2 * m);
  auto alphabet = free_group_alphabet(m);
  std::vector<Transition> transitions;
  for (std::size_t x = 0; x < k; ++x) {
    const std::size_t inv = (x + k / 2) % k;
    for (std::size_t y = 0; y < k; ++y)
      if (y != inv) transitions.push_back({x, y, y});
  }
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  return Automaton(alphabet, alphabet, std::move(transitions), all, all);
}

Automaton catalog_automaton(CatalogName name, int param) {
  switch (name) {
    case CatalogName::fibonacci: return fibonacci_automaton();
    case CatalogName::free_monoid: return free_monoid_automaton(param);
    case CatalogName::free_group_unambiguous: return free_group_unambiguous(param);
    case CatalogName::free_group_ergodic: return free_group_ergodic(param);
  }
  throw InvalidInput("unknown catalog automaton");
}

namespace {

using StateSet = std::vector<bool>;

StateSet step(const Automaton& a, const StateSet& from, std::size_t symbol) {
  StateSet out(a.num_states(), false);
  for (const auto& t : a.transitions())
    if (t.symbol == symbol && from[t.from]) out[t.to] = true;
  return out;
}

bool any_final(const Automaton& a, const StateSet& s) {
  for (auto f : a.final_states())
    if (s[f]) return true;
  return false;
}

void enumerate_words(const Automaton& a, std::vector<std::size_t>& word, int max_len,
                     std::vector<std::vector<std::size_t>>& out) {
  StateSet cur(a.num_states(), false);
  for (auto s : a.initial()) cur[s] = true;
  for (auto sym : word) cur = step(a, cur, sym);
  if (std::none_of(cur.begin(), cur.end(), [](bool b) { return b; })) return;
  if (any_final(a, cur)) out.push_back(word);
  if (static_cast<int>(word.size()) == max_len) return;
  for (std::size_t c = 0; c < a.num_symbols(); ++c) {
    word.push_back(c);
    enumerate_words(a, word, max_len, out);
    word.pop_back();
  }
}

}  // namespace

std::optional<int> find_e_witness(const Automaton& a, int max_n, int sample_len) {
  if (max_n < 0) throw InvalidInput("max_n must be non-negative");
  const std::size_t n = a.num_states();
  std::vector<std::vector<std::size_t>> fwd(n);
  for (const auto& t : a.transitions()) fwd[t.from].push_back(t.to);
  auto reachable = reach(n, fwd, a.initial());

  std::vector<std::vector<std::size_t>> words;
  std::vector<std::size_t> scratch;
  enumerate_words(a, scratch, std::max(sample_len, 0), words);

  // Distances between all state pairs by breadth-first search.
  constexpr int far = std::numeric_limits<int>::max();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, far));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> queue{s};
    dist[s][s] = 0;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (auto v : fwd[u]) {
        if (dist[s][v] == far) {
          dist[s][v] = dist[s][u] + 1;
          queue.push_back(v);
        }
      }
    }
  }

  int worst = 0;
  for (const auto& v : words) {
    // States from which v is accepted.
    std::vector<std::size_t> targets;
    for (std::size_t q = 0; q < n; ++q) {
      StateSet cur(n, false);
      cur[q] = true;
      for (auto sym : v) cur = step(a, cur, sym);
      if (any_final(a, cur)) targets.push_back(q);
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (!reachable[s] || !a.is_final(s)) continue;
      int best = far;
      for (auto q : targets) best = std::min(best, dist[s][q]);
      if (best > max_n) return std::nullopt;
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace growth
