#ifndef SQPSK_VERSION_HPP
#define SQPSK_VERSION_HPP

namespace sqpsk {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace sqpsk

#endif  // SQPSK_VERSION_HPP
