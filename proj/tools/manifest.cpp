#include "manifest.hpp"

#include "tonnetz/version.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <ios>
#include <iterator>
#include <memory>
#include <stdexcept>

namespace tonnetz::cli {

nlohmann::json RunManifest::to_json() const
{
    nlohmann::json inputs_json = nlohmann::json::array();
    for (const auto& in : inputs)
        inputs_json.push_back({{"path", in.path}, {"sha256", in.sha256}});
    return {
        {"tool", "tonnetz"},
        {"version", kVersion},
        {"command", command},
        {"inputs", std::move(inputs_json)},
        {"normalized", normalized ? nlohmann::json(*normalized) : nlohmann::json(nullptr)},
        {"degrees", degrees},
        {"linkage", linkage ? nlohmann::json(*linkage) : nlohmann::json(nullptr)},
        {"seeds", seeds},
        {"parameters", parameters},
    };
}

std::string sha256_hex(const std::string& bytes)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
        throw std::runtime_error("SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

InputRecord record_input(const std::string& path, const std::string& contents)
{
    return {path, sha256_hex(contents)};
}

} // namespace tonnetz::cli
