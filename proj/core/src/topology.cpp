#include "coopsim/topology.hpp"

#include <string>

namespace coopsim {

namespace {

std::string vertex_name(VertexId v) {
  return "vertex " + std::to_string(v.value);
}

}  // namespace

VertexId DeviceGraph::add_device(DeviceKind kind) {
  VertexId id{static_cast<std::uint32_t>(vertices_.size())};
  vertices_.push_back(Vertex{id, kind, true});
  adjacency_.emplace_back();
  return id;
}

LinkId DeviceGraph::add_link(VertexId a, VertexId b, LinkKind kind,
                             double rho_capacity, double rho_delay) {
  if (!contains(a)) throw UnknownVertexError(vertex_name(a) + " does not exist");
  if (!contains(b)) throw UnknownVertexError(vertex_name(b) + " does not exist");
  if (a == b) throw SelfLoopError("link endpoints must be distinct (" + vertex_name(a) + ")");
  if (!(rho_capacity > 0.0 && rho_capacity <= 1.0)) {
    throw ParameterOutOfRangeError("rho_capacity",
                                   "must be in (0, 1], got " + std::to_string(rho_capacity));
  }
  if (!(rho_delay >= 0.0 && rho_delay <= 1.0)) {
    throw ParameterOutOfRangeError("rho_delay",
                                   "must be in [0, 1], got " + std::to_string(rho_delay));
  }

  LinkId id{static_cast<std::uint32_t>(links_.size())};
  links_.push_back(Link{id, a, b, kind, rho_capacity, rho_delay});
  adjacency_[a.value].push_back(Neighbor{b, id});
  adjacency_[b.value].push_back(Neighbor{a, id});
  return id;
}

std::vector<Neighbor> DeviceGraph::neighbors(VertexId v) const {
  if (!contains(v)) throw UnknownVertexError(vertex_name(v) + " does not exist");
  std::vector<Neighbor> out;
  out.reserve(adjacency_[v.value].size());
  for (const Neighbor& n : adjacency_[v.value]) {
    if (vertices_[n.vertex.value].alive) out.push_back(n);
  }
  return out;
}

const Vertex& DeviceGraph::vertex(VertexId v) const {
  if (!contains(v)) throw UnknownVertexError(vertex_name(v) + " does not exist");
  return vertices_[v.value];
}

const Link& DeviceGraph::link(LinkId l) const {
  if (l.value >= links_.size()) {
    throw UnknownVertexError("link " + std::to_string(l.value) + " does not exist");
  }
  return links_[l.value];
}

void DeviceGraph::set_alive(VertexId v, bool alive) {
  if (!contains(v)) throw UnknownVertexError(vertex_name(v) + " does not exist");
  vertices_[v.value].alive = alive;
}

std::size_t DeviceGraph::degree(VertexId v) const {
  if (!contains(v)) throw UnknownVertexError(vertex_name(v) + " does not exist");
  return adjacency_[v.value].size();
}

}  // namespace coopsim
