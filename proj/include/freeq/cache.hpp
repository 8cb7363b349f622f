#ifndef FREEQ_CACHE_HPP
#define FREEQ_CACHE_HPP

#include <freeq/resolution.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace freeq {

/*
 * Everything that changes the meaning of a stored resolution. Changing any
 * field changes every cache key.
 */
struct Conventions {
    std::string monomial_order = "lex-desc";
    std::string koszul_sign = "(-1)^(k+1)";
    std::string hom_degree = "raises-by-t";
    int format = 1;

    std::string text() const;
};

std::string sha256_hex(const std::string& data);
// Canonical text of a presentation together with its ring and group.
std::string presentation_fingerprint(const Presentation& m);
std::string cache_key(const Presentation& m, int floor, const Conventions& conventions = {});

// Exact serialization of a resolution (the presentation itself is not
// stored; it is reattached on load).
std::string serialize_resolution(const ProjectiveComplex& c);
ProjectiveComplex deserialize_resolution(const std::string& text, const Presentation& m);

/*
 * One file per key. Entries carry their key and a checksum of the payload;
 * anything that fails to parse or verify is deleted and reported as a miss.
 */
class ResolutionCache {
public:
    explicit ResolutionCache(std::filesystem::path dir);

    // $FREEQ_CACHE_DIR, else $XDG_CACHE_HOME/freeq, else ~/.cache/freeq.
    static std::filesystem::path default_dir();

    const std::filesystem::path& dir() const { return m_dir; }
    std::filesystem::path path_for(const std::string& key) const;

    std::optional<ProjectiveComplex> load(const std::string& key, const Presentation& m) const;
    void store(const std::string& key, const ProjectiveComplex& c) const;

private:
    std::filesystem::path m_dir;
};

// Resolution of m from the cache when possible, computing and storing it
// otherwise. A null cache always computes.
ProjectiveComplex cached_resolution(const Presentation& m, int floor, const ResolutionCache* cache,
                                    bool* hit = nullptr);

}  // namespace freeq

#endif
