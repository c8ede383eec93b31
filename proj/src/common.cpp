#include "paq/common.hpp"

#include <cstdlib>

namespace paq {

int effective_jobs(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

long long parse_ll(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw Error("");
    return v;
  } catch (...) {
    throw Error("PAQ_BUDGET: bad value for " + key + ": '" + value + "'");
  }
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  const char* env = std::getenv("PAQ_BUDGET");
  if (!env || !*env) return b;
  std::string s(env);
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw Error("PAQ_BUDGET: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    long long v = parse_ll(key, value);
    if (key == "enum_max")
      b.enum_poset_max = static_cast<int>(v);
    else if (key == "epsilon_max")
      b.epsilon_poset_max = static_cast<int>(v);
    else if (key == "algebra_max")
      b.epsilon_algebra_max = v;
    else if (key == "ibm_tuples")
      b.ibm_tuple_budget = v;
    else if (key == "images_max")
      b.images_poset_max = static_cast<int>(v);
    else if (key == "jobs")
      b.jobs = static_cast<int>(v);
    else
      throw Error("PAQ_BUDGET: unknown key '" + key + "'");
  }
  return b;
}

}  // namespace paq
