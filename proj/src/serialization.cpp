// Copyright 2026 The Spectrum Auction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spectrum/serialization.hpp"

#include <fstream>
#include <sstream>

namespace spectrum {

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

Point point_from_json(const Json& doc) {
  if (!doc.is_array() || doc.size() != 2) throw InputError("points must be [x, y] arrays");
  return {doc[0].get<double>(), doc[1].get<double>()};
}

Json point_to_json(Point p) { return Json::array({p.x, p.y}); }

template <class F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

Json environment_to_json(const Instance& instance) {
  Json env;
  env["type"] = to_string(instance.kind());
  switch (instance.kind()) {
    case EnvironmentKind::kSinrPowerControl:
      break;
    case EnvironmentKind::kSinrFixedPower:
      env["scheme"] = to_string(instance.fixed_power().scheme);
      env["base_power"] = instance.fixed_power().base_power;
      break;
    case EnvironmentKind::kConflictGraph: {
      Json edges = Json::array();
      for (auto [a, b] : instance.conflict_graph().edges()) edges.push_back({a, b});
      env["edges"] = std::move(edges);
      break;
    }
    case EnvironmentKind::kSecondaryNetwork: {
      const SecondaryNetwork& net = instance.secondary_network();
      env["nodes"] = net.node_count();
      Json bidders = Json::array();
      for (const NetworkRequest& req : net.requests()) {
        Json edges = Json::array();
        for (const DirectedEdge& e : req.edges) edges.push_back({e.from, e.to});
        Json b;
        b["source"] = req.source;
        b["destination"] = req.destination;
        b["edges"] = std::move(edges);
        bidders.push_back(std::move(b));
      }
      env["bidders"] = std::move(bidders);
      Json conflicts = Json::array();
      for (const auto& [a, b] : net.conflicts()) {
        conflicts.push_back(Json::array({Json::array({a.bidder, a.edge}),
                                         Json::array({b.bidder, b.edge})}));
      }
      env["conflicts"] = std::move(conflicts);
      break;
    }
  }
  return env;
}

Environment environment_from_json(const Json& env, std::size_t link_count) {
  const std::string type = field(env, "type").get<std::string>();
  if (type == "sinr_power_control") return SinrPowerControl{};
  if (type == "sinr_fixed_power") {
    return SinrFixedPower{parse_power_scheme(field(env, "scheme").get<std::string>()),
                          field(env, "base_power").get<double>()};
  }
  if (type == "conflict_graph") {
    std::vector<std::pair<BidderId, BidderId>> edges;
    for (const Json& e : field(env, "edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("conflict edges must be [a, b] pairs");
      edges.emplace_back(e[0].get<BidderId>(), e[1].get<BidderId>());
    }
    return ConflictGraph(link_count, std::move(edges));
  }
  if (type == "secondary_network") {
    std::vector<NetworkRequest> requests;
    for (const Json& b : field(env, "bidders")) {
      NetworkRequest req;
      req.source = field(b, "source").get<std::size_t>();
      req.destination = field(b, "destination").get<std::size_t>();
      for (const Json& e : field(b, "edges")) {
        if (!e.is_array() || e.size() != 2) throw InputError("network edges must be [u, v] pairs");
        req.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
      }
      requests.push_back(std::move(req));
    }
    std::vector<std::pair<EdgeRef, EdgeRef>> conflicts;
    for (const Json& c : field(env, "conflicts")) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_array() || c[0].size() != 2 ||
          !c[1].is_array() || c[1].size() != 2) {
        throw InputError("conflicts must be [[bidder, edge], [bidder, edge]] pairs");
      }
      conflicts.push_back({{c[0][0].get<BidderId>(), c[0][1].get<std::size_t>()},
                           {c[1][0].get<BidderId>(), c[1][1].get<std::size_t>()}});
    }
    return SecondaryNetwork(field(env, "nodes").get<std::size_t>(), std::move(requests),
                            std::move(conflicts));
  }
  throw InputError("unknown environment type '" + type + "'");
}

}  // namespace

Json to_json(const Instance& instance) {
  Json doc;
  Json links = Json::array();
  for (const Link& l : instance.links()) {
    Json link;
    link["id"] = l.id;
    link["sender"] = point_to_json(l.sender);
    link["receiver"] = point_to_json(l.receiver);
    links.push_back(std::move(link));
  }
  doc["links"] = std::move(links);
  doc["channels"] = instance.channels();
  doc["params"] = {{"alpha", instance.params().alpha},
                   {"beta", instance.params().beta},
                   {"noise", instance.params().noise}};
  doc["environment"] = environment_to_json(instance);
  return doc;
}

Instance instance_from_json(const Json& doc) {
  return guarded("instance", [&] {
    std::vector<Link> links;
    if (doc.contains("links")) {
      for (const Json& l : doc.at("links")) {
        links.push_back({field(l, "id").get<BidderId>(), point_from_json(field(l, "sender")),
                         point_from_json(field(l, "receiver"))});
      }
    }
    const Json& p = field(doc, "params");
    const PhysicalParams params{field(p, "alpha").get<double>(), field(p, "beta").get<double>(),
                                field(p, "noise").get<double>()};
    Environment env = environment_from_json(field(doc, "environment"), links.size());
    return Instance(std::move(links), field(doc, "channels").get<std::size_t>(), params,
                    std::move(env));
  });
}

Json to_json(const Allocation& allocation) {
  Json doc;
  doc["channels"] = allocation.channels;
  Json powers = Json::array();
  for (const auto& [id, sigma] : allocation.powers) powers.push_back({{"id", id}, {"power", sigma}});
  doc["powers"] = std::move(powers);
  Json paths = Json::array();
  for (const auto& [id, hops] : allocation.paths) {
    Json list = Json::array();
    for (const PathHop& h : hops) list.push_back({{"edge", h.edge}, {"channel", h.channel}});
    paths.push_back({{"bidder", id}, {"hops", std::move(list)}});
  }
  doc["paths"] = std::move(paths);
  return doc;
}

Allocation allocation_from_json(const Json& doc) {
  return guarded("allocation", [&] {
    Allocation a;
    a.channels = field(doc, "channels").get<std::vector<std::vector<BidderId>>>();
    if (doc.contains("powers")) {
      for (const Json& p : doc.at("powers")) {
        a.powers[field(p, "id").get<BidderId>()] = field(p, "power").get<double>();
      }
    }
    if (doc.contains("paths")) {
      for (const Json& p : doc.at("paths")) {
        std::vector<PathHop> hops;
        for (const Json& h : field(p, "hops")) {
          hops.push_back({field(h, "edge").get<std::size_t>(),
                          field(h, "channel").get<ChannelIndex>()});
        }
        a.paths[field(p, "bidder").get<BidderId>()] = std::move(hops);
      }
    }
    return a;
  });
}

Json to_json(const RandomTape& tape) {
  Json doc;
  doc["seed"] = tape.seed;
  doc["secprice"] = tape.secprice;
  doc["stat"] = tape.stat;
  doc["price_exponent"] = tape.price_exponent;
  return doc;
}

RandomTape tape_from_json(const Json& doc) {
  return guarded("tape", [&] {
    RandomTape t;
    t.seed = field(doc, "seed").get<std::uint64_t>();
    t.secprice = field(doc, "secprice").get<bool>();
    t.stat = field(doc, "stat").get<std::vector<bool>>();
    t.price_exponent = field(doc, "price_exponent").get<unsigned>();
    return t;
  });
}

Json to_json(const Outcome& outcome) {
  Json doc;
  doc["winners"] = outcome.winners();
  doc["price"] = outcome.price;
  doc["payments"] = outcome.payments;
  doc["revenue"] = outcome.revenue();
  doc["removed"] = outcome.removed;
  doc["allocation"] = to_json(outcome.allocation);
  doc["tape"] = to_json(outcome.tape);
  return doc;
}

Outcome outcome_from_json(const Json& doc) {
  return guarded("outcome", [&] {
    Outcome o;
    o.allocation = allocation_from_json(field(doc, "allocation"));
    o.payments = field(doc, "payments").get<std::vector<double>>();
    o.price = field(doc, "price").get<double>();
    o.tape = tape_from_json(field(doc, "tape"));
    o.removed = field(doc, "removed").get<std::vector<BidderId>>();
    return o;
  });
}

std::vector<double> values_from_json(const Json& doc) {
  return guarded("value profile", [&] {
    const Json& list = doc.is_object() ? field(doc, "values") : doc;
    if (!list.is_array()) throw InputError("value profile must be an array");
    return list.get<std::vector<double>>();
  });
}

Json values_to_json(const std::vector<double>& values) {
  Json doc;
  doc["values"] = values;
  return doc;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace spectrum
