#ifndef AFFINA_VERSION_HPP_
#define AFFINA_VERSION_HPP_

#define AFFINA_VERSION_MAJOR 0
#define AFFINA_VERSION_MINOR 1
#define AFFINA_VERSION_PATCH 0

namespace affina {
inline constexpr char const* version_string = "0.1.0";
}

#endif  // AFFINA_VERSION_HPP_
