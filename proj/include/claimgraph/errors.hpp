#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace claimgraph {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A line of an input file could not be parsed or violates a record-level
// constraint. `line` is 1-based.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

class DuplicateDocument : public Error {
 public:
  explicit DuplicateDocument(const std::string& id)
      : Error("duplicate document id: " + id), id(id) {}
  std::string id;
};

class EmptyDocument : public Error {
 public:
  explicit EmptyDocument(const std::string& id)
      : Error("document has no frames: " + id), id(id) {}
  std::string id;
};

class UnknownDocument : public Error {
 public:
  explicit UnknownDocument(const std::string& id)
      : Error("unknown document: " + id), id(id) {}
  std::string id;
};

class FrameIndexOutOfRange : public Error {
 public:
  FrameIndexOutOfRange(const std::string& id, std::size_t index,
                       std::size_t frame_count)
      : Error("frame index " + std::to_string(index) + " out of range for " +
              id + " (" + std::to_string(frame_count) + " frames)") {}
};

class SpanOutOfRange : public Error {
 public:
  using Error::Error;
};

class UnresolvableEvidence : public Error {
 public:
  UnresolvableEvidence(const std::string& claim_id, const std::string& doc,
                       std::size_t frame_index)
      : Error("claim " + claim_id + ": evidence frame (" + doc + ", " +
              std::to_string(frame_index) + ") not resolvable in corpus"),
        claim_id(claim_id) {}
  std::string claim_id;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatVersionMismatch : public Error {
 public:
  FormatVersionMismatch(std::uint32_t found, std::uint32_t expected)
      : Error("index format version " + std::to_string(found) +
              ", expected " + std::to_string(expected)) {}
};

// No claim entity survives in the graph and no claim-entity page exists.
class NotEnoughEntities : public Error {
 public:
  using Error::Error;
};

// The exact path enumerator refuses graphs above its node-count guard.
class GraphTooLarge : public Error {
 public:
  using Error::Error;
};

class NoEvidence : public Error {
 public:
  using Error::Error;
};

class MismatchedIds : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace claimgraph
