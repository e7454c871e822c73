#ifndef NASHCERT_VERSION_HPP
#define NASHCERT_VERSION_HPP

namespace nashcert {

inline constexpr const char* kToolName = "nashcert";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace nashcert

#endif
