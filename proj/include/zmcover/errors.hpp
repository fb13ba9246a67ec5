#pragma once

#include <stdexcept>
#include <string>

namespace zmcover {

// Root of every error thrown by the library. Mathematical violations found by
// the verification harness are reported as data and never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class NotConnected : public Error {
 public:
  using Error::Error;
};

class NotTwoEdgeConnected : public Error {
 public:
  using Error::Error;
};

class NotSpanningTree : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

// Spanning-tree enumeration refused because tau(g) is above the cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class PathMismatch : public Error {
 public:
  using Error::Error;
};

class EndpointMismatch : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class NonConstantNe : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NonBinaryCoordinates : public Error {
 public:
  using Error::Error;
};

}  // namespace zmcover
