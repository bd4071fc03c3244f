#include "easched/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "easched/errors.hpp"

namespace easched {

using nlohmann::json;

namespace {

constexpr double kSpacingTol = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ---- parsing helpers ------------------------------------------------------

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ParseError(path + ": unknown field '" + key + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + ": missing field '" + key + "'");
  return *it;
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw ParseError(path + ": expected a number, got " + value.type_name());
  return value.get<double>();
}

std::int64_t as_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer())
    throw ParseError(path + ": expected an integer, got " +
                     (value.is_number() ? std::string("a fractional number") : value.type_name()));
  return value.get<std::int64_t>();
}

int as_int(const json& value, const std::string& path) {
  const std::int64_t v = as_integer(value, path);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ParseError(path + ": integer out of range");
  return static_cast<int>(v);
}

const json& as_array(const json& value, const std::string& path) {
  if (!value.is_array()) throw ParseError(path + ": expected an array, got " + value.type_name());
  return value;
}

const json& as_object(const json& value, const std::string& path) {
  if (!value.is_object()) throw ParseError(path + ": expected an object, got " + value.type_name());
  return value;
}

EnergyCostDescriptor parse_energy(const json& value, const std::string& path) {
  as_object(value, path);
  const json& type = require(value, "type", path);
  if (!type.is_string()) throw ParseError(path + ".type: expected a string");
  const auto kind = type.get<std::string>();
  if (kind == "poly") {
    reject_unknown(value, {"type", "v", "beta"}, path);
    return PolynomialEnergy{as_number(require(value, "v", path), path + ".v"),
                            as_number(require(value, "beta", path), path + ".beta")};
  }
  if (kind == "table") {
    reject_unknown(value, {"type", "costs"}, path);
    const std::string cpath = path + ".costs";
    TableEnergy table;
    const json& costs = as_array(require(value, "costs", path), cpath);
    for (std::size_t k = 0; k < costs.size(); ++k)
      table.costs.push_back(as_number(costs[k], cpath + "[" + std::to_string(k) + "]"));
    return table;
  }
  throw ParseError(path + ".type: expected \"poly\" or \"table\", got \"" + kind + "\"");
}

Job parse_job(const json& value, const std::string& path) {
  as_object(value, path);
  reject_unknown(value, {"id", "rho", "weight", "release", "deadline", "energy"}, path);
  Job job;
  job.id = as_int(require(value, "id", path), path + ".id");
  job.rho = as_integer(require(value, "rho", path), path + ".rho");
  job.weight = as_number(require(value, "weight", path), path + ".weight");
  if (value.contains("release")) job.release = as_number(value["release"], path + ".release");
  if (value.contains("deadline")) job.deadline = as_number(value["deadline"], path + ".deadline");
  job.energy = parse_energy(require(value, "energy", path), path + ".energy");
  return job;
}

Instance from_json(const json& doc) {
  as_object(doc, "instance");
  reject_unknown(doc, {"jobs", "speeds", "delta", "edges", "objective", "alpha", "epsilon", "beta"},
                 "instance");
  Instance inst;
  const json& jobs = as_array(require(doc, "jobs", "instance"), "jobs");
  for (std::size_t k = 0; k < jobs.size(); ++k)
    inst.jobs.push_back(parse_job(jobs[k], "jobs[" + std::to_string(k) + "]"));

  const json& speeds = as_array(require(doc, "speeds", "instance"), "speeds");
  for (std::size_t k = 0; k < speeds.size(); ++k)
    inst.speeds.speeds.push_back(as_number(speeds[k], "speeds[" + std::to_string(k) + "]"));
  inst.speeds.delta = as_number(require(doc, "delta", "instance"), "delta");

  if (doc.contains("edges")) {
    const json& edges = as_array(doc["edges"], "edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string path = "edges[" + std::to_string(k) + "]";
      const json& e = as_array(edges[k], path);
      if (e.size() != 2) throw ParseError(path + ": expected a pair [i1, i2]");
      inst.precedence.edges.emplace_back(as_int(e[0], path + "[0]"), as_int(e[1], path + "[1]"));
    }
  }

  const json& objective = require(doc, "objective", "instance");
  if (!objective.is_string()) throw ParseError("objective: expected a string");
  try {
    inst.objective = objective_from_string(objective.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("objective: ") + e.what());
  }
  if (doc.contains("alpha") && !doc["alpha"].is_null()) inst.alpha = as_number(doc["alpha"], "alpha");
  inst.epsilon = as_number(require(doc, "epsilon", "instance"), "epsilon");
  inst.beta = as_number(require(doc, "beta", "instance"), "beta");
  return inst;
}

json energy_to_json(const EnergyCostDescriptor& energy) {
  if (const auto* poly = std::get_if<PolynomialEnergy>(&energy))
    return {{"type", "poly"}, {"v", poly->v}, {"beta", poly->beta}};
  return {{"type", "table"}, {"costs", std::get<TableEnergy>(energy).costs}};
}

json to_json(const Instance& inst) {
  json jobs = json::array();
  for (const Job& job : inst.jobs) {
    jobs.push_back({{"id", job.id},
                    {"rho", job.rho},
                    {"weight", job.weight},
                    {"release", job.release},
                    {"deadline", job.deadline},
                    {"energy", energy_to_json(job.energy)}});
  }
  json edges = json::array();
  for (const auto& [a, b] : inst.precedence.edges) edges.push_back({a, b});
  json doc = {{"jobs", jobs},     {"speeds", inst.speeds.speeds},           {"delta", inst.speeds.delta},
              {"edges", edges},   {"objective", to_string(inst.objective)}, {"epsilon", inst.epsilon},
              {"beta", inst.beta}};
  doc["alpha"] = inst.alpha ? json(*inst.alpha) : json(nullptr);
  return doc;
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0; }

}  // namespace

const char* to_string(Objective objective) {
  return objective == Objective::CompletionTime ? "completion" : "tardiness";
}

Objective objective_from_string(const std::string& name) {
  if (name == "completion") return Objective::CompletionTime;
  if (name == "tardiness") return Objective::Tardiness;
  throw std::invalid_argument("unknown objective '" + name + "' (expected completion or tardiness)");
}

bool Instance::has_releases() const {
  return std::any_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.release > 0; });
}

std::size_t Instance::index_of(int id) const {
  for (std::size_t k = 0; k < jobs.size(); ++k)
    if (jobs[k].id == id) return k;
  throw std::out_of_range("no job with id " + std::to_string(id));
}

std::vector<std::pair<int, int>> Instance::edges_by_index() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(precedence.edges.size());
  for (const auto& [a, b] : precedence.edges)
    out.emplace_back(static_cast<int>(index_of(a)), static_cast<int>(index_of(b)));
  return out;
}

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  auto& v = report.violations;

  if (inst.jobs.empty()) v.push_back("instance has no jobs");

  std::set<int> ids;
  for (const Job& job : inst.jobs) {
    const std::string who = "job " + std::to_string(job.id);
    if (!ids.insert(job.id).second) v.push_back(who + ": duplicate id");
    if (job.rho < 1) v.push_back(who + ": rho must be a positive integer, got " + std::to_string(job.rho));
    if (!(std::isfinite(job.weight) && job.weight > 0))
      v.push_back(who + ": weight must be positive, got " + fmt(job.weight));
    if (!finite_nonneg(job.release)) v.push_back(who + ": release must be non-negative");
    if (!finite_nonneg(job.deadline)) v.push_back(who + ": deadline must be non-negative");
    if (inst.objective == Objective::Tardiness && job.release != 0)
      v.push_back(who + ": tardiness objective requires zero release dates");
    if (const auto* poly = std::get_if<PolynomialEnergy>(&job.energy)) {
      if (!(std::isfinite(poly->v) && poly->v > 0)) v.push_back(who + ": energy v must be positive");
      if (!(std::isfinite(poly->beta) && poly->beta >= 2)) v.push_back(who + ": energy beta must be >= 2");
    } else {
      const auto& costs = std::get<TableEnergy>(job.energy).costs;
      if (costs.size() != inst.speeds.size())
        v.push_back(who + ": energy table has " + std::to_string(costs.size()) + " entries for " +
                    std::to_string(inst.speeds.size()) + " speeds");
      if (!std::all_of(costs.begin(), costs.end(), finite_nonneg))
        v.push_back(who + ": energy table entries must be non-negative");
    }
  }

  const auto& sp = inst.speeds.speeds;
  if (sp.empty()) v.push_back("speed set is empty");
  if (!(std::isfinite(inst.speeds.delta) && inst.speeds.delta > 0)) v.push_back("delta must be positive");
  for (std::size_t j = 0; j < sp.size(); ++j) {
    if (!(std::isfinite(sp[j]) && sp[j] > 0)) v.push_back("speed " + fmt(sp[j]) + " must be positive");
    if (j == 0) continue;
    if (!(sp[j] > sp[j - 1]))
      v.push_back("speeds must be strictly increasing");
    else if (sp[j] > (1 + inst.speeds.delta) * sp[j - 1] * (1 + kSpacingTol))
      v.push_back("speed spacing violated: " + fmt(sp[j]) + " > (1 + delta) * " + fmt(sp[j - 1]));
  }

  bool edges_ok = true;
  for (const auto& [a, b] : inst.precedence.edges) {
    if (!ids.count(a) || !ids.count(b)) {
      v.push_back("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") references an unknown job");
      edges_ok = false;
    } else if (a == b) {
      v.push_back("edge (" + std::to_string(a) + ", " + std::to_string(a) + ") is a self-loop");
      edges_ok = false;
    }
  }
  if (edges_ok && ids.size() == inst.jobs.size()) {
    const auto edges = inst.edges_by_index();
    std::vector<int> indegree(inst.jobs.size(), 0);
    std::vector<std::vector<int>> out(inst.jobs.size());
    for (const auto& [a, b] : edges) {
      out[a].push_back(b);
      ++indegree[b];
    }
    std::vector<int> ready;
    for (std::size_t k = 0; k < indegree.size(); ++k)
      if (indegree[k] == 0) ready.push_back(static_cast<int>(k));
    std::size_t seen = 0;
    while (!ready.empty()) {
      const int k = ready.back();
      ready.pop_back();
      ++seen;
      for (int b : out[k])
        if (--indegree[b] == 0) ready.push_back(b);
    }
    if (seen != inst.jobs.size()) v.push_back("precedence graph contains a cycle");
  }

  if (inst.alpha && !(*inst.alpha > 0 && *inst.alpha < 1)) v.push_back("alpha must lie in (0, 1)");
  if (!(std::isfinite(inst.epsilon) && inst.epsilon > 0)) v.push_back("epsilon must be positive");
  if (!(std::isfinite(inst.beta) && inst.beta >= 2)) v.push_back("beta must be >= 2");
  return report;
}

void require_valid(const Instance& instance) {
  const ValidationReport report = validate(instance);
  if (report.ok()) return;
  std::string msg = "invalid instance:";
  for (const auto& line : report.violations) msg += "\n  " + line;
  throw ValidationError(msg);
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  Instance inst = from_json(doc);
  require_valid(inst);
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string dump_instance(const Instance& instance, int indent) { return to_json(instance).dump(indent); }

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path.string());
  out << dump_instance(instance) << '\n';
  if (!out) throw Error("failed writing instance file " + path.string());
}

Instance generate(std::uint64_t seed, int n, int m, const GeneratorConfig& cfg) {
  if (n < 1 || m < 1) throw std::invalid_argument("generate: need n >= 1 and m >= 1");
  if (!(cfg.edge_density >= 0 && cfg.edge_density <= 1))
    throw std::invalid_argument("generate: edge density must lie in [0, 1]");
  if (cfg.rho_max < 1) throw std::invalid_argument("generate: rho_max must be >= 1");
  if (!(cfg.weight_min > 0 && cfg.weight_max >= cfg.weight_min))
    throw std::invalid_argument("generate: need 0 < weight_min <= weight_max");
  if (!(cfg.v_min > 0 && cfg.v_max >= cfg.v_min))
    throw std::invalid_argument("generate: need 0 < v_min <= v_max");
  if (!(cfg.release_max >= 0) || !(cfg.table_cost_max >= 0) || !(cfg.deadline_scale >= 0))
    throw std::invalid_argument("generate: ranges must be non-negative");
  if (!(cfg.delta > 0)) throw std::invalid_argument("generate: delta must be positive");
  if (cfg.objective == Objective::Tardiness && cfg.release_max > 0)
    throw std::invalid_argument("generate: tardiness instances cannot have release dates");

  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo == hi ? lo : std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  Instance inst;
  inst.objective = cfg.objective;
  inst.epsilon = cfg.epsilon;
  inst.beta = cfg.beta;
  inst.alpha = cfg.alpha;
  inst.speeds.delta = cfg.delta;
  double sigma = 1.0;
  for (int j = 0; j < m; ++j) {
    inst.speeds.speeds.push_back(cfg.geometric_speeds ? std::pow(1 + cfg.delta, j) : sigma);
    sigma *= 1 + cfg.delta * uniform(0.25, 1.0);
  }

  std::uniform_int_distribution<std::int64_t> rho_dist(1, cfg.rho_max);
  double total_work = 0;
  for (int k = 0; k < n; ++k) {
    Job job;
    job.id = k + 1;
    job.rho = rho_dist(rng);
    job.weight = uniform(cfg.weight_min, cfg.weight_max);
    job.release = cfg.release_max > 0 ? uniform(0.0, cfg.release_max) : 0.0;
    if (cfg.energy == EnergyKind::Polynomial) {
      job.energy = PolynomialEnergy{uniform(cfg.v_min, cfg.v_max), cfg.beta};
    } else {
      TableEnergy table;
      for (int j = 0; j < m; ++j)
        table.costs.push_back(uniform(0.0, cfg.table_cost_max * static_cast<double>(job.rho)));
      job.energy = std::move(table);
    }
    total_work += static_cast<double>(job.rho) / inst.speeds.slowest();
    inst.jobs.push_back(std::move(job));
  }
  for (Job& job : inst.jobs) job.deadline = uniform(0.0, cfg.deadline_scale * total_work);

  // Edges follow a random topological order, so the graph is acyclic.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(cfg.edge_density);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (cfg.edge_density > 0 && coin(rng)) inst.precedence.edges.emplace_back(perm[a], perm[b]);

  require_valid(inst);
  return inst;
}

}  // namespace easched
