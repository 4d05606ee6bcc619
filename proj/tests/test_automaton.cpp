#include <doctest.h>

#include <fstream>
#include <sstream>

#include "growth/automaton.hpp"
#include "growth/error.hpp"

using namespace growth;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(GROWTH_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string load_error(const std::string& text) {
  try {
    load_automaton(text);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("fibonacci file matches the catalog automaton") {
  const Automaton a = load_automaton(slurp("fibonacci.json"));
  const Automaton b = fibonacci_automaton();
  CHECK(a.alphabet() == b.alphabet());
  CHECK(a.states() == b.states());
  CHECK(a.transitions() == b.transitions());
  CHECK(a.deterministic());
  CHECK(a.vertex_labeled());
  CHECK(a.state_labels()[0] == std::optional<std::size_t>(0));
  CHECK(a.state_labels()[1] == std::optional<std::size_t>(1));
  CHECK(load_automaton(automaton_to_json(a)).transitions() == a.transitions());
}

TEST_CASE("schema diagnostics carry a location") {
  CHECK(load_error(slurp("bad_state.json")) == "transitions[0].to: unknown state 'x'");
  CHECK(load_error(slurp("extra_key.json")) == "unknown key 'weights'");
  CHECK(load_error(slurp("truncated.json")).rfind("malformed document", 0) == 0);
  CHECK(load_error(R"({"alphabet":["a","a"],"states":["s"],"initial":["s"],"final":["s"],"transitions":[]})") ==
        "alphabet[1]: duplicate symbol 'a'");
  CHECK(load_error(R"({"alphabet":["a"],"states":["s"],"initial":[],"final":["s"],"transitions":[]})") ==
        "initial: empty initial set");
  CHECK(load_error(R"({"alphabet":["a"],"states":["s"],"initial":["s"],"final":["s"]})") ==
        "missing key 'transitions'");
}

TEST_CASE("constructor validates indices") {
  CHECK_THROWS_AS(Automaton({"a"}, {"s"}, {{0, 1, 0}}, {0}, {0}), InvalidInput);
  CHECK_THROWS_AS(Automaton({"a"}, {"s"}, {{0, 0, 2}}, {0}, {0}), InvalidInput);
}

TEST_CASE("adjacency and ergodicity") {
  const AdjacencyMatrix m = adjacency(fibonacci_automaton());
  CHECK(m.n == 2);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(1, 1) == 0);
  CHECK(m.is_zero_one());
  CHECK(is_ergodic(fibonacci_automaton()));
  CHECK_FALSE(is_ergodic(load_automaton(slurp("not_ergodic.json"))));
  CHECK(adjacency(free_monoid_automaton(3)).at(0, 0) == 3);
  CHECK_FALSE(adjacency(free_monoid_automaton(3)).is_zero_one());
}

TEST_CASE("free group automata") {
  const Automaton u = free_group_unambiguous(2);
  CHECK(u.num_states() == 5);
  CHECK(u.alphabet() == std::vector<std::string>{"a", "b", "A", "B"});
  CHECK(u.deterministic());
  CHECK(u.transitions().size() == 4 + 4 * 3);

  const Automaton e = free_group_ergodic(2);
  CHECK(e.num_states() == 4);
  CHECK(e.vertex_labeled());
  CHECK(is_ergodic(e));
  const AdjacencyMatrix m = adjacency(e);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(m.at(i, j) == ((j == (i + 2) % 4) ? 0 : 1));
  CHECK(generator_name(1, true) == "B");
}

TEST_CASE("forbidden-word construction reproduces the golden mean shift") {
  const Automaton a = build_sft_automaton({"a", "b"}, std::vector<std::string>{"bb"});
  CHECK(a.num_states() == 2);
  CHECK(a.deterministic());
  const AdjacencyMatrix m = adjacency(a);
  CHECK(m.at(0, 0) + m.at(0, 1) + m.at(1, 0) + m.at(1, 1) == 3);

  // a* and b* only: not strongly connected.
  const Automaton r = build_sft_automaton({"a", "b"}, std::vector<std::string>{"ab", "ba"});
  CHECK_FALSE(is_ergodic(r));
  CHECK_THROWS_AS(build_sft_automaton({"a", "b"}, std::vector<std::vector<std::string>>{{"a", "c"}}), InvalidInput);
}

TEST_CASE("pruning keeps live states in order") {
  // 'dead' cannot reach a final state, 'lost' is unreachable.
  const Automaton a({"a"}, {"s", "dead", "t", "lost"}, {{0, 0, 1}, {0, 0, 2}, {3, 0, 2}}, {0}, {0, 2});
  const Automaton p = prune_dead_states(a);
  CHECK(p.states() == std::vector<std::string>{"s", "t"});
  CHECK(p.transitions().size() == 1);
  CHECK(p.deterministic());
  CHECK_FALSE(a.deterministic());
}

TEST_CASE("connector length") {
  CHECK(find_e_witness(fibonacci_automaton(), 4) == std::optional<int>(1));
  CHECK(find_e_witness(free_monoid_automaton(2), 4) == std::optional<int>(0));
  CHECK(find_e_witness(free_group_unambiguous(2), 4).has_value());
}
