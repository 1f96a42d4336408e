#pragma once

#include <stdexcept>
#include <string>

namespace lrrt {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed file or image contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// No free path connects the requested blocks.
class UnreachableError : public Error {
 public:
  UnreachableError() : Error("unreachable: no free path between start and goal") {}
};

/// A class grid has no promising pixel on free space.
class EmptySupportError : public Error {
 public:
  EmptySupportError() : Error("empty support: no promising pixel lies on free space") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lrrt
