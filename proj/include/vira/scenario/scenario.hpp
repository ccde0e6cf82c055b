#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vira/core.hpp"
#include "vira/model/performance.hpp"

namespace vira::scenario {

struct Topic {
  std::string name;
  int index = 0;  // ordinal in the declared topic set
};

/// Per-question overrides of the expected-cue profile.
struct ProfileOverrides {
  std::optional<model::ScoreBand> duration;
  std::optional<model::ScoreBand> latency;
  std::optional<model::ScoreBand> rate;
  std::optional<model::ScoreBand> pitch_stdev;
  std::optional<model::ScoreBand> jitter;
  std::optional<model::ScoreBand> shimmer;
  std::optional<model::ScoreBand> breaks;
  std::map<model::ScoreStat, double> weights;  // partial; merged over defaults
};

/// One recruiter question with its topic tags, difficulty and expected
/// performance. 0..n topics per question.
struct Node {
  std::string id;
  std::string text;
  std::string stage;
  std::vector<std::string> topics;
  double difficulty = 0.0;
  double expected_performance = 1.0;  // P_e; defaulted from difficulty on load
  std::vector<std::string> next;
  std::optional<ProfileOverrides> overrides;

  bool terminal() const { return next.empty(); }
};

/// Easy questions should go well: P_e defaults to 1 at difficulty 0 and
/// falls linearly to -0.6 at difficulty 1.
inline double default_expected_performance(double difficulty) {
  return clamp11(1.0 - 1.6 * difficulty);
}

/// The interview script: a validated graph of questions. Immutable after
/// load and freely shareable.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<Topic> topics, std::string entry, std::vector<Node> nodes)
      : topics_(std::move(topics)), entry_(std::move(entry)), nodes_(std::move(nodes)) {
    for (size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i].id] = i;
    validate();
  }

  const std::vector<Topic>& topics() const { return topics_; }
  const std::string& entry() const { return entry_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  std::vector<std::string> topic_names() const {
    std::vector<std::string> names;
    names.reserve(topics_.size());
    for (const auto& t : topics_) names.push_back(t.name);
    return names;
  }

  bool has_node(const std::string& id) const { return index_.count(id) > 0; }

  const Node& node(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ValidationError("unknown scenario node: " + id);
    return nodes_[it->second];
  }

  /// Successor questions of `current`, in declared order. Empty means the
  /// interview ends here.
  std::vector<const Node*> feasible_next(const std::string& current) const {
    const Node& n = node(current);
    std::vector<const Node*> out;
    out.reserve(n.next.size());
    for (const auto& id : n.next) out.push_back(&node(id));
    return out;
  }

 private:
  void validate() const {
    if (nodes_.empty()) throw ValidationError("scenario has no nodes");
    std::set<std::string> topic_names_set;
    for (const auto& t : topics_) {
      if (!topic_names_set.insert(t.name).second) {
        throw ValidationError("duplicate topic: " + t.name);
      }
    }
    std::set<std::string> seen;
    for (const auto& n : nodes_) {
      if (!seen.insert(n.id).second) throw ValidationError("duplicate node id: " + n.id);
    }
    if (!has_node(entry_)) throw ValidationError("entry node not found: " + entry_);
    bool any_terminal = false;
    for (const auto& n : nodes_) {
      if (n.terminal()) any_terminal = true;
      if (n.expected_performance < -1.0 || n.expected_performance > 1.0) {
        throw ValidationError("node " + n.id + ": expected_performance outside [-1, 1]");
      }
      if (n.difficulty < 0.0 || n.difficulty > 1.0) {
        throw ValidationError("node " + n.id + ": difficulty outside [0, 1]");
      }
      for (const auto& t : n.topics) {
        if (!topic_names_set.count(t)) {
          throw ValidationError("node " + n.id + ": unknown topic " + t);
        }
      }
      for (const auto& succ : n.next) {
        if (!has_node(succ)) {
          throw ValidationError("node " + n.id + ": dangling edge to " + succ);
        }
      }
    }
    if (!any_terminal) throw ValidationError("scenario has no terminal node");
  }

  std::vector<Topic> topics_;
  std::string entry_;
  std::vector<Node> nodes_;
  std::map<std::string, size_t> index_;
};

inline model::ScoreBand band_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.contains("band") || !j.contains("limits")) {
    throw ValidationError(where + ": band override needs \"band\" and \"limits\" pairs");
  }
  const auto band = j.at("band");
  const auto limits = j.at("limits");
  if (!band.is_array() || band.size() != 2 || !limits.is_array() || limits.size() != 2) {
    throw ValidationError(where + ": band/limits must be [lo, hi] pairs");
  }
  try {
    return model::make_band(band[0].get<double>(), band[1].get<double>(),
                            limits[0].get<double>(), limits[1].get<double>());
  } catch (const ContractError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

inline nlohmann::ordered_json band_to_json(const model::ScoreBand& b) {
  nlohmann::ordered_json j;
  j["band"] = {b.lo, b.hi};
  j["limits"] = {b.min, b.max};
  return j;
}

namespace detail {

inline ProfileOverrides overrides_from_json(const nlohmann::json& j, const std::string& where) {
  ProfileOverrides o;
  auto band = [&](const char* key, std::optional<model::ScoreBand>& slot) {
    if (j.contains(key)) slot = scenario::band_from_json(j.at(key), where);
  };
  band("duration", o.duration);
  band("latency", o.latency);
  band("rate", o.rate);
  band("pitch_stdev", o.pitch_stdev);
  band("jitter", o.jitter);
  band("shimmer", o.shimmer);
  band("breaks", o.breaks);
  if (j.contains("weights")) {
    for (const auto& [key, value] : j.at("weights").items()) {
      const auto stat = model::score_stat_from_name(key);
      if (!stat) throw ValidationError(where + ": unknown weight key " + key);
      o.weights[*stat] = value.get<double>();
    }
  }
  return o;
}

inline nlohmann::ordered_json overrides_to_json(const ProfileOverrides& o) {
  nlohmann::ordered_json j;
  auto band = [&](const char* key, const std::optional<model::ScoreBand>& slot) {
    if (slot) j[key] = band_to_json(*slot);
  };
  band("duration", o.duration);
  band("latency", o.latency);
  band("rate", o.rate);
  band("pitch_stdev", o.pitch_stdev);
  band("jitter", o.jitter);
  band("shimmer", o.shimmer);
  band("breaks", o.breaks);
  if (!o.weights.empty()) {
    nlohmann::ordered_json w;
    for (const auto& [stat, value] : o.weights) w[std::string(score_stat_name(stat))] = value;
    j["weights"] = w;
  }
  return j;
}

}  // namespace detail

/// Parses and validates a scenario document:
///   {"topics": [...], "entry": id, "nodes": [{...}]}
inline Graph load_scenario_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("entry") || !doc.contains("nodes")) {
    throw ValidationError("scenario document needs \"entry\" and \"nodes\"");
  }
  std::vector<Topic> topics;
  if (doc.contains("topics")) {
    int index = 0;
    for (const auto& t : doc.at("topics")) {
      topics.push_back({t.get<std::string>(), index++});
    }
  }
  std::vector<Node> nodes;
  for (const auto& nj : doc.at("nodes")) {
    Node n;
    if (!nj.contains("id")) throw ValidationError("scenario node missing id");
    n.id = nj.at("id").get<std::string>();
    const std::string where = "node " + n.id;
    n.text = nj.value("text", std::string{});
    n.stage = nj.value("stage", std::string{});
    if (nj.contains("topics")) {
      for (const auto& t : nj.at("topics")) n.topics.push_back(t.get<std::string>());
    }
    n.difficulty = nj.value("difficulty", 0.0);
    if (nj.contains("expected_performance")) {
      n.expected_performance = nj.at("expected_performance").get<double>();
    } else {
      n.expected_performance = default_expected_performance(n.difficulty);
    }
    if (nj.contains("next")) {
      for (const auto& s : nj.at("next")) n.next.push_back(s.get<std::string>());
    }
    if (nj.contains("profile_overrides")) {
      n.overrides = detail::overrides_from_json(nj.at("profile_overrides"), where);
    }
    nodes.push_back(std::move(n));
  }
  return Graph(std::move(topics), doc.at("entry").get<std::string>(), std::move(nodes));
}

inline Graph load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return load_scenario_json(doc);
}

inline nlohmann::ordered_json to_json(const Graph& g) {
  nlohmann::ordered_json doc;
  doc["topics"] = g.topic_names();
  doc["entry"] = g.entry();
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& n : g.nodes()) {
    nlohmann::ordered_json nj;
    nj["id"] = n.id;
    nj["text"] = n.text;
    if (!n.stage.empty()) nj["stage"] = n.stage;
    nj["topics"] = n.topics;
    nj["difficulty"] = n.difficulty;
    nj["expected_performance"] = n.expected_performance;
    nj["next"] = n.next;
    if (n.overrides) nj["profile_overrides"] = detail::overrides_to_json(*n.overrides);
    nodes.push_back(std::move(nj));
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

/// Applies difficulty scaling plus any per-question overrides on top of
/// the session profile defaults.
inline model::ExpectedCueProfile profile_for(const Node& n, const model::Baseline* baseline,
                                             const model::ExpectedCueProfile& defaults = {}) {
  model::ExpectedCueProfile p = defaults;
  p.duration = model::duration_band_for_difficulty(n.difficulty);
  if (baseline) p.loudness = model::loudness_band_from_baseline(*baseline);
  if (n.overrides) {
    const auto& o = *n.overrides;
    if (o.duration) p.duration = *o.duration;
    if (o.latency) p.latency = *o.latency;
    if (o.rate) p.rate = *o.rate;
    if (o.pitch_stdev) p.pitch_stdev = *o.pitch_stdev;
    if (o.jitter) p.jitter = *o.jitter;
    if (o.shimmer) p.shimmer = *o.shimmer;
    if (o.breaks) p.breaks = *o.breaks;
    for (const auto& [stat, w] : o.weights) p.weights[stat] = w;
  }
  return p;
}

}  // namespace vira::scenario
