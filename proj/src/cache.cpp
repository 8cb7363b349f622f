#include <freeq/cache.hpp>
#include <freeq/errors.hpp>

#include <json.hpp>
#include <openssl/sha.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace freeq {

using Json = nlohmann::json;

std::string Conventions::text() const
{
    return "monomial_order=" + monomial_order + ";koszul_sign=" + koszul_sign + ";hom_degree=" + hom_degree +
           ";format=" + std::to_string(format);
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
    std::ostringstream os;
    for (unsigned char b : digest)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
    return os.str();
}

namespace {

Json matrix_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Matrix matrix_from(const Json& j)
{
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const Json& data = j.at("data");
    if (data.size() != m.rows())
        throw ValidationError("matrix row count mismatch");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (data[i].size() != m.cols())
            throw ValidationError("matrix column count mismatch");
        for (std::size_t j2 = 0; j2 < m.cols(); ++j2)
            m(i, j2) = parse_rational(data[i][j2].get<std::string>());
    }
    return m;
}

Json element_json(const FreeElement& x)
{
    Json terms = Json::array();
    for (const auto& [t, c] : x)
        terms.push_back({t.u, t.monomial, to_string(c)});
    return terms;
}

FreeElement element_from(const Json& j)
{
    FreeElement x;
    for (const auto& t : j)
        add_to(x, {t.at(0).get<std::size_t>(), t.at(1).get<Exponents>()}, parse_rational(t.at(2).get<std::string>()));
    return x;
}

Json rep_json(const Representation& r)
{
    Json mats = Json::array();
    for (const auto& m : r.matrices())
        mats.push_back(matrix_json(m));
    return {{"dim", r.dim()}, {"matrices", std::move(mats)}};
}

Json block_json(const GeneratorBlock& b)
{
    return {{"name", b.name}, {"degree", b.degree}, {"labels", b.labels}, {"rep", rep_json(b.rep)}};
}

}  // namespace

std::string presentation_fingerprint(const Presentation& m)
{
    const RingPtr& R = m.ring;
    const auto& G = *R->group();
    Json ring = {{"names", R->generators().names},
                 {"degrees", R->generators().degrees},
                 {"action", rep_json(R->generators().action)}};
    Json group = {{"names", G.names()}, {"table", G.table()}};
    Json gens = Json::array();
    for (const auto& b : m.generators)
        gens.push_back(block_json(b));
    Json rels = Json::array();
    for (const auto& r : m.relations)
        rels.push_back(element_json(r.element));
    Json j = {{"group", group}, {"ring", ring}, {"generators", gens}, {"relations", rels}};
    return j.dump();
}

std::string cache_key(const Presentation& m, int floor, const Conventions& conventions)
{
    return sha256_hex(presentation_fingerprint(m) + "\nfloor=" + std::to_string(floor) + "\n" + conventions.text());
}

std::string serialize_resolution(const ProjectiveComplex& c)
{
    Json terms = Json::array();
    for (const auto& f : c.terms) {
        Json blocks = Json::array();
        for (const auto& b : f.blocks())
            blocks.push_back(block_json(b));
        terms.push_back(std::move(blocks));
    }
    Json diffs = Json::array();
    for (const auto& d : c.differentials) {
        Json images = Json::array();
        for (const auto& x : d)
            images.push_back(element_json(x));
        diffs.push_back(std::move(images));
    }
    Json aug = Json::array();
    for (const auto& x : c.augmentation)
        aug.push_back(element_json(x));
    Json j = {{"lo", c.lo}, {"terms", terms}, {"differentials", diffs}, {"augmentation", aug}};
    return j.dump();
}

ProjectiveComplex deserialize_resolution(const std::string& text, const Presentation& m)
{
    const Json j = Json::parse(text);
    ProjectiveComplex c;
    c.ring = m.ring;
    c.augmented = m;
    c.lo = j.at("lo").get<int>();
    for (const auto& blocks : j.at("terms")) {
        std::vector<GeneratorBlock> bs;
        for (const auto& b : blocks) {
            GeneratorBlock g;
            g.name = b.at("name").get<std::string>();
            g.degree = b.at("degree").get<int>();
            g.labels = b.at("labels").get<std::vector<std::string>>();
            std::vector<Matrix> mats;
            for (const auto& mj : b.at("rep").at("matrices"))
                mats.push_back(matrix_from(mj));
            g.rep = Representation(m.ring->group(), b.at("rep").at("dim").get<std::size_t>(), std::move(mats));
            g.rep.validate();
            bs.push_back(std::move(g));
        }
        c.terms.emplace_back(m.ring, std::move(bs));
    }
    for (const auto& images : j.at("differentials")) {
        std::vector<FreeElement> d;
        for (const auto& x : images)
            d.push_back(element_from(x));
        c.differentials.push_back(std::move(d));
    }
    for (const auto& x : j.at("augmentation"))
        c.augmentation.push_back(element_from(x));
    if (c.differentials.size() != c.terms.size() && !(c.terms.empty() && c.differentials.size() == 1))
        throw ValidationError("resolution has mismatched terms and differentials");
    for (std::size_t s = 1; s < c.terms.size(); ++s)
        if (c.differentials[s].size() != c.terms[s].u_count())
            throw ValidationError("resolution differential has the wrong number of images");
    if (!c.terms.empty() && c.augmentation.size() != c.terms[0].u_count())
        throw ValidationError("resolution augmentation has the wrong number of images");
    return c;
}

ResolutionCache::ResolutionCache(std::filesystem::path dir) : m_dir(std::move(dir)) {}

std::filesystem::path ResolutionCache::default_dir()
{
    if (const char* d = std::getenv("FREEQ_CACHE_DIR"); d && *d)
        return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return std::filesystem::path(x) / "freeq";
    if (const char* h = std::getenv("HOME"); h && *h)
        return std::filesystem::path(h) / ".cache" / "freeq";
    return std::filesystem::temp_directory_path() / "freeq-cache";
}

std::filesystem::path ResolutionCache::path_for(const std::string& key) const
{
    return m_dir / (key + ".json");
}

std::optional<ProjectiveComplex> ResolutionCache::load(const std::string& key, const Presentation& m) const
{
    const auto path = path_for(key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        return std::nullopt;
    try {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        const Json entry = Json::parse(ss.str());
        const std::string payload = entry.at("payload").get<std::string>();
        if (entry.at("key").get<std::string>() != key || entry.at("checksum").get<std::string>() != sha256_hex(payload))
            throw ValidationError("cache entry does not verify");
        return deserialize_resolution(payload, m);
    } catch (const std::exception&) {
        std::filesystem::remove(path, ec);
        return std::nullopt;
    }
}

void ResolutionCache::store(const std::string& key, const ProjectiveComplex& c) const
{
    std::error_code ec;
    std::filesystem::create_directories(m_dir, ec);
    if (ec)
        return;
    const std::string payload = serialize_resolution(c);
    const Json entry = {{"key", key}, {"checksum", sha256_hex(payload)}, {"payload", payload}};
    // Write then rename so readers never see a partial entry.
    const auto path = path_for(key);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            return;
        out << entry.dump();
    }
    std::filesystem::rename(tmp, path, ec);
}

ProjectiveComplex cached_resolution(const Presentation& m, int floor, const ResolutionCache* cache, bool* hit)
{
    if (hit)
        *hit = false;
    if (!cache)
        return minimal_free_resolution(m, floor);
    const std::string key = cache_key(m, floor);
    if (auto c = cache->load(key, m)) {
        if (hit)
            *hit = true;
        return std::move(*c);
    }
    ProjectiveComplex c = minimal_free_resolution(m, floor);
    cache->store(key, c);
    return c;
}

}  // namespace freeq
