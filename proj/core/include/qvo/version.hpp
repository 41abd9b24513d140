#ifndef QVO_VERSION_HPP
#define QVO_VERSION_HPP

namespace qvo {

// Embedded in every report row so results stay traceable to a build.
inline constexpr const char* tool_version = "qvorder 0.1.0";

// Bumped only when the seed-derivation schema changes; derived streams are
// stable across releases that share a schema version.
inline constexpr unsigned seed_schema_version = 1;

}  // namespace qvo

#endif
