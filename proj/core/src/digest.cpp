#include "cubeknot/digest.hpp"

#include <openssl/evp.h>

#include "cubeknot/io.hpp"
#include "cubeknot/moves.hpp"

namespace cubeknot {

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

std::string diagram_digest(const KnotDiagram& d) {
    return "sha256:" + sha256_hex(to_text(d.complex()));
}

}  // namespace cubeknot
