#include "enso/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace enso {

Hash256 sha256(const std::uint8_t* data, std::size_t len) {
    Hash256 out;
    unsigned int md_len = 0;
    if (EVP_Digest(data, len, out.digest.data(), &md_len, EVP_sha256(), nullptr) != 1 ||
        md_len != out.digest.size()) {
        throw std::runtime_error("sha256: digest computation failed");
    }
    return out;
}

Hash256 sha256(const Bytes& data) {
    return sha256(data.data(), data.size());
}

Hash256 sha256(std::string_view data) {
    return sha256(reinterpret_cast<const std::uint8_t*>(data.data()), data.size());
}

} // namespace enso
