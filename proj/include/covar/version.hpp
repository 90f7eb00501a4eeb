#ifndef COVAR_VERSION_HPP
#define COVAR_VERSION_HPP

namespace covar {

inline constexpr const char* kVersion = "0.1.0";

} // namespace covar

#endif // COVAR_VERSION_HPP
