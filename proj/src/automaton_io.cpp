#include <map>
#include <set>

#include <json.hpp>

#include "growth/automaton.hpp"
#include "growth/error.hpp"

namespace growth {

namespace {

using nlohmann::json;

const std::set<std::string> kTopKeys{"alphabet", "states", "initial", "final", "transitions"};
const std::set<std::string> kTransitionKeys{"from", "symbol", "to"};

std::vector<std::string> string_list(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidInput(std::string("missing key '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_array()) throw InvalidInput(std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      throw InvalidInput(std::string(key) + "[" + std::to_string(i) + "]: expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

std::size_t lookup(const std::map<std::string, std::size_t>& index, const std::string& name,
                   const std::string& where, const char* what) {
  auto it = index.find(name);
  if (it == index.end()) throw InvalidInput(where + ": unknown " + what + " '" + name + "'");
  return it->second;
}

}  // namespace

Automaton load_automaton(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!kTopKeys.count(key)) throw InvalidInput("unknown key '" + key + "'");
  }
  auto alphabet = string_list(doc, "alphabet");
  auto states = string_list(doc, "states");
  auto initial_names = string_list(doc, "initial");
  auto final_names = string_list(doc, "final");
  if (alphabet.empty()) throw InvalidInput("alphabet: empty alphabet");
  if (initial_names.empty()) throw InvalidInput("initial: empty initial set");
  if (final_names.empty()) throw InvalidInput("final: empty final set");

  std::map<std::string, std::size_t> sym_index, state_index;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!sym_index.emplace(alphabet[i], i).second) {
      throw InvalidInput("alphabet[" + std::to_string(i) + "]: duplicate symbol '" + alphabet[i] + "'");
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!state_index.emplace(states[i], i).second) {
      throw InvalidInput("states[" + std::to_string(i) + "]: duplicate state '" + states[i] + "'");
    }
  }
  std::vector<std::size_t> initial, final_states;
  for (std::size_t i = 0; i < initial_names.size(); ++i) {
    initial.push_back(lookup(state_index, initial_names[i], "initial[" + std::to_string(i) + "]", "state"));
  }
  for (std::size_t i = 0; i < final_names.size(); ++i) {
    final_states.push_back(lookup(state_index, final_names[i], "final[" + std::to_string(i) + "]", "state"));
  }

  if (!doc.contains("transitions")) throw InvalidInput("missing key 'transitions'");
  const auto& tr = doc.at("transitions");
  if (!tr.is_array()) throw InvalidInput("'transitions' must be a list");
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const std::string where = "transitions[" + std::to_string(i) + "]";
    const auto& t = tr[i];
    if (!t.is_object()) throw InvalidInput(where + ": expected an object");
    for (const auto& [key, value] : t.items()) {
      if (!kTransitionKeys.count(key)) throw InvalidInput(where + ": unknown key '" + key + "'");
    }
    for (const auto& key : kTransitionKeys) {
      if (!t.contains(key) || !t.at(key).is_string()) {
        throw InvalidInput(where + ": '" + key + "' must be a string");
      }
    }
    transitions.push_back({lookup(state_index, t.at("from").get<std::string>(), where + ".from", "state"),
                           lookup(sym_index, t.at("symbol").get<std::string>(), where + ".symbol", "symbol"),
                           lookup(state_index, t.at("to").get<std::string>(), where + ".to", "state")});
  }
  return Automaton(std::move(alphabet), std::move(states), std::move(transitions), std::move(initial),
                   std::move(final_states));
}

std::string automaton_to_json(const Automaton& a) {
  nlohmann::ordered_json doc;
  doc["alphabet"] = a.alphabet();
  doc["states"] = a.states();
  auto names = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(a.states()[i]);
    return out;
  };
  doc["initial"] = names(a.initial());
  doc["final"] = names(a.final_states());
  doc["transitions"] = nlohmann::ordered_json::array();
  for (const auto& t : a.transitions()) {
    doc["transitions"].push_back(
        {{"from", a.states()[t.from]}, {"symbol", a.alphabet()[t.symbol]}, {"to", a.states()[t.to]}});
  }
  return doc.dump(2);
}

}  // namespace growth
