#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rectdual {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad path, invalid layout, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class GraphError : public Error {
 public:
  enum class Kind {
    malformed_line,
    self_loop,
    duplicate_edge,
    disconnected,
    too_many_edges,
    unknown_vertex,
    empty,
  };

  GraphError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class NotBiconnectedError : public Error {
 public:
  explicit NotBiconnectedError(const std::string& cut_vertex)
      : Error("graph is not biconnected (cut vertex " + cut_vertex + ")"),
        cut_vertex_(cut_vertex) {}

  const std::string& cut_vertex() const noexcept { return cut_vertex_; }

 private:
  std::string cut_vertex_;
};

/// No side of the current enclosure can host the rectangle of `vertex`.
class NoValidPlacement : public Error {
 public:
  explicit NoValidPlacement(const std::string& vertex)
      : Error("no valid placement for vertex " + vertex), vertex_(vertex) {}

  const std::string& vertex() const noexcept { return vertex_; }

 private:
  std::string vertex_;
};

class NotExterior : public Error {
 public:
  explicit NotExterior(const std::string& vertex)
      : Error("rectangle " + vertex + " does not touch the enclosure"),
        vertex_(vertex) {}

  const std::string& vertex() const noexcept { return vertex_; }

 private:
  std::string vertex_;
};

/// Deleting an exterior rectangle left a hole no neighbour stretch can fill.
class NotRepairable : public Error {
 public:
  explicit NotRepairable(const std::string& vertex)
      : Error("hole left by " + vertex + " cannot be repaired by stretching"),
        vertex_(vertex) {}

  const std::string& vertex() const noexcept { return vertex_; }

 private:
  std::string vertex_;
};

class NotAreaUniversal : public Error {
 public:
  using Error::Error;
};

}  // namespace rectdual
