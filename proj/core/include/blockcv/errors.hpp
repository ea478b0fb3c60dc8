#pragma once

#include <stdexcept>
#include <string>

namespace blockcv {

// Base class for every error this library raises on bad input or a failed
// contract. CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The series is too short for the requested operation. `bound` names the
// violated inequality, e.g. "n >= 2v+1".
class TooFewSamples : public Error {
 public:
  TooFewSamples(long long required_, long long got_, const std::string& bound)
      : Error("too few samples: violated " + bound + " (required n >= " +
              std::to_string(required_) + ", got n = " + std::to_string(got_) +
              ")"),
        required(required_),
        got(got_) {}

  long long required;
  long long got;
};

// Test-block center outside the legitimate range [v+1, n-v].
class IllegitimateCenter : public Error {
 public:
  IllegitimateCenter(int center_, int lo_, int hi_)
      : Error("illegitimate center " + std::to_string(center_) +
              ": legitimate centers are [" + std::to_string(lo_) + ", " +
              std::to_string(hi_) + "]"),
        center(center_),
        lo(lo_),
        hi(hi_) {}

  int center;
  int lo;
  int hi;
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(long long index_, long long n_)
      : Error("index " + std::to_string(index_) + " outside [1, " +
              std::to_string(n_) + "]"),
        index(index_),
        n(n_) {}

  long long index;
  long long n;
};

// Pair queries need two distinct samples; use the single-sample count for
// i == j.
class BadPair : public Error {
 public:
  explicit BadPair(int i)
      : Error("pair requires two distinct samples, got i = j = " +
              std::to_string(i)),
        i(i) {}

  int i;
};

class MalformedDesign : public Error {
 public:
  using Error::Error;
};

class BadParameters : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

// A per-split evaluator returned a non-finite loss or threw.
class EvaluatorFailure : public Error {
 public:
  EvaluatorFailure(int center_, const std::string& cause_)
      : Error("evaluator failed at center " + std::to_string(center_) + ": " +
              cause_),
        center(center_),
        cause(cause_) {}

  int center;
  std::string cause;
};

}  // namespace blockcv
