#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "coopsim/errors.hpp"

namespace coopsim {

enum class DeviceKind { Phone, BaseStation, WifiAccessPoint };

enum class LinkKind { WifiLink, CellLink };

struct VertexId {
  std::uint32_t value = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct LinkId {
  std::uint32_t value = 0;
  auto operator<=>(const LinkId&) const = default;
};

struct Vertex {
  VertexId id;
  DeviceKind kind = DeviceKind::Phone;
  bool alive = true;
};

// Undirected link with symmetric parameters. rho_capacity is the fraction of
// the network-wide maximum capacity this link reaches; rho_delay is the
// fraction of a slot lost to propagation delay.
struct Link {
  LinkId id;
  VertexId a;
  VertexId b;
  LinkKind kind = LinkKind::WifiLink;
  double rho_capacity = 1.0;  // (0, 1]
  double rho_delay = 0.0;     // [0, 1]
};

struct Neighbor {
  VertexId vertex;
  LinkId link;
  auto operator<=>(const Neighbor&) const = default;
};

// Typed device-and-link graph. Vertices are never removed; churn is a
// mutable liveness flag so ids stay stable across a whole simulation.
class DeviceGraph {
 public:
  // Creates a new alive vertex and returns its fresh id.
  VertexId add_device(DeviceKind kind);

  // Connects two existing, distinct vertices. Parallel links between the
  // same pair are allowed. Throws UnknownVertexError, SelfLoopError or
  // ParameterOutOfRangeError (naming rho_capacity / rho_delay).
  LinkId add_link(VertexId a, VertexId b, LinkKind kind, double rho_capacity,
                  double rho_delay);

  // Alive vertices adjacent to v, with the connecting link. The liveness of
  // v itself does not restrict the query. Throws UnknownVertexError.
  std::vector<Neighbor> neighbors(VertexId v) const;

  const Vertex& vertex(VertexId v) const;
  const Link& link(LinkId l) const;

  void set_alive(VertexId v, bool alive);
  bool is_alive(VertexId v) const { return vertex(v).alive; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t link_count() const noexcept { return links_.size(); }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Link>& links() const noexcept { return links_; }

  std::size_t degree(VertexId v) const;

 private:
  bool contains(VertexId v) const noexcept {
    return v.value < vertices_.size();
  }

  std::vector<Vertex> vertices_;
  std::vector<Link> links_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

}  // namespace coopsim
