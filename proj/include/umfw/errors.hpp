#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace umfw {

// Every thrown error carries a stable machine-readable code next to the
// human-readable message.  The CLI maps codes onto exit-code classes.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
  throw Error(code, msg);
}

namespace err {
inline constexpr const char* InvalidDescriptor = "InvalidDescriptor";
inline constexpr const char* KindMismatch = "KindMismatch";
inline constexpr const char* BoundTooLarge = "BoundTooLarge";
inline constexpr const char* MembershipError = "MembershipError";
inline constexpr const char* InvalidEmbedding = "InvalidEmbedding";
inline constexpr const char* ShapeMismatch = "ShapeMismatch";
inline constexpr const char* ResourceCap = "ResourceCap";
inline constexpr const char* DegreeMismatch = "DegreeMismatch";
inline constexpr const char* NotASubgroup = "NotASubgroup";
inline constexpr const char* NotABasis = "NotABasis";
inline constexpr const char* NotNaturallyOrdered = "NotNaturallyOrdered";
inline constexpr const char* CriteriaDisagree = "CriteriaDisagree";
inline constexpr const char* InvalidFamily = "InvalidFamily";
inline constexpr const char* NoSuchAtom = "NoSuchAtom";
inline constexpr const char* CorrespondenceFailed = "CorrespondenceFailed";
inline constexpr const char* MalformedH = "MalformedH";
inline constexpr const char* EquivalenceViolated = "EquivalenceViolated";
inline constexpr const char* PreconditionFailed = "PreconditionFailed";
inline constexpr const char* IoError = "IoError";
}  // namespace err

}  // namespace umfw
