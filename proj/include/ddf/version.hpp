#ifndef DDF_VERSION_HPP
#define DDF_VERSION_HPP

namespace ddf {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace ddf

#endif  // DDF_VERSION_HPP
