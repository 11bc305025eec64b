#include "ptlattice/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ptlattice {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
    return {buf, ptr};
}

std::string csv_header(const ParamHeader& params) {
    std::string s;
    for (const auto& [k, v] : params) s += "# " + k + " = " + v + "\n";
    return s;
}

nlohmann::json params_json(const ParamHeader& params) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : params) {
        double x = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec == std::errc() && ptr == v.data() + v.size() && !v.empty()) {
            j[k] = x;
        } else {
            j[k] = v;
        }
    }
    return j;
}

std::string chi_csv(const SusceptibilityProfile& chi, const ParamHeader& params) {
    std::ostringstream os;
    os << csv_header(params);
    if (!chi.is_2d()) {
        os << "u,re_chi,im_chi\n";
        for (Eigen::Index k = 0; k < chi.u.size(); ++k) {
            os << format_double(chi.u(k)) << ',' << format_double(chi.chi(k, 0).real()) << ','
               << format_double(chi.chi(k, 0).imag()) << '\n';
        }
        return os.str();
    }
    os << "u,v,re_chi,im_chi\n";
    for (Eigen::Index k = 0; k < chi.u.size(); ++k)
        for (Eigen::Index l = 0; l < chi.v.size(); ++l) {
            os << format_double(chi.u(k)) << ',' << format_double(chi.v(l)) << ','
               << format_double(chi.chi(k, l).real()) << ',' << format_double(chi.chi(k, l).imag()) << '\n';
        }
    return os.str();
}

nlohmann::json chi_json(const SusceptibilityProfile& chi, const ParamHeader& params) {
    nlohmann::json j;
    j["params"] = params_json(params);
    j["u"] = std::vector<double>(chi.u.begin(), chi.u.end());
    if (chi.is_2d()) j["v"] = std::vector<double>(chi.v.begin(), chi.v.end());
    auto re = nlohmann::json::array(), im = nlohmann::json::array();
    for (Eigen::Index k = 0; k < chi.chi.rows(); ++k) {
        if (chi.is_2d()) {
            std::vector<double> r, i;
            for (Eigen::Index l = 0; l < chi.chi.cols(); ++l) {
                r.push_back(chi.chi(k, l).real());
                i.push_back(chi.chi(k, l).imag());
            }
            re.push_back(r);
            im.push_back(i);
        } else {
            re.push_back(chi.chi(k, 0).real());
            im.push_back(chi.chi(k, 0).imag());
        }
    }
    j["re_chi"] = re;
    j["im_chi"] = im;
    return j;
}

std::string pattern_csv(const FarFieldPattern& p, const ParamHeader& params) {
    std::ostringstream os;
    os << csv_header(params);
    if (!p.is_2d()) {
        os << "s,intensity\n";
        for (Eigen::Index i = 0; i < p.s_x.size(); ++i) {
            os << format_double(p.s_x(i)) << ',' << format_double(p.intensity(i, 0)) << '\n';
        }
        return os.str();
    }
    os << "sx,sy,intensity\n";
    for (Eigen::Index i = 0; i < p.s_x.size(); ++i)
        for (Eigen::Index j = 0; j < p.s_y.size(); ++j) {
            os << format_double(p.s_x(i)) << ',' << format_double(p.s_y(j)) << ','
               << format_double(p.intensity(i, j)) << '\n';
        }
    return os.str();
}

nlohmann::json pattern_json(const FarFieldPattern& p, const ParamHeader& params) {
    nlohmann::json j;
    j["params"] = params_json(params);
    j["sx"] = std::vector<double>(p.s_x.begin(), p.s_x.end());
    if (p.is_2d()) {
        j["sy"] = std::vector<double>(p.s_y.begin(), p.s_y.end());
        auto rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < p.intensity.rows(); ++i) {
            std::vector<double> r(p.intensity.cols());
            for (Eigen::Index k = 0; k < p.intensity.cols(); ++k) r[k] = p.intensity(i, k);
            rows.push_back(r);
        }
        j["intensity"] = rows;
    } else {
        const Eigen::ArrayXd col = p.intensity.col(0);
        j["intensity"] = std::vector<double>(col.begin(), col.end());
    }
    return j;
}

std::string orders_csv(const OrderTable& orders, const ParamHeader& params) {
    std::ostringstream os;
    os << csv_header(params);
    os << (orders.two_d ? "n_x,n_y,intensity\n" : "n,intensity\n");
    for (const auto& e : orders.entries) {
        os << e.n_x << ',';
        if (orders.two_d) os << e.n_y << ',';
        os << format_double(e.intensity) << '\n';
    }
    return os.str();
}

nlohmann::json orders_json(const OrderTable& orders, const ParamHeader& params) {
    nlohmann::json j;
    j["params"] = params_json(params);
    auto list = nlohmann::json::array();
    for (const auto& e : orders.entries) {
        if (orders.two_d) {
            list.push_back({{"n_x", e.n_x}, {"n_y", e.n_y}, {"intensity", e.intensity}});
        } else {
            list.push_back({{"n", e.n_x}, {"intensity", e.intensity}});
        }
    }
    j["orders"] = list;
    return j;
}

std::string sweep_csv(const SweepTable& table, int max_order, const ParamHeader& params) {
    std::ostringstream os;
    os << csv_header(params) << "# sweep_parameter = " << to_string(table.parameter) << "\n";
    os << "param";
    for (int n = -max_order; n <= max_order; ++n) os << ",I_" << n;
    os << ",asymmetry,d_im,d_re,balance,class\n";
    for (const auto& row : table.rows) {
        os << format_double(row.value);
        if (!row.ok()) {
            for (int n = -max_order; n <= max_order; ++n) os << ",nan";
            os << ",nan,nan,nan,nan,error:" << row.error.substr(0, row.error.find(':')) << '\n';
            continue;
        }
        for (int n = -max_order; n <= max_order; ++n) os << ',' << format_double(row.orders->at(n));
        os << ',' << format_double(row.asymmetry) << ',' << format_double(row.metrics->d_im_antisym) << ','
           << format_double(row.metrics->d_re_sym) << ',' << format_double(row.metrics->gain_loss_balance) << ','
           << to_string(*row.kind) << '\n';
    }
    return os.str();
}

nlohmann::json sweep_json(const SweepTable& table, const ParamHeader& params) {
    nlohmann::json j;
    j["params"] = params_json(params);
    j["sweep_parameter"] = to_string(table.parameter);
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r;
        r["param"] = row.value;
        if (!row.ok()) {
            r["error"] = row.error;
        } else {
            auto orders = nlohmann::json::array();
            for (const auto& e : row.orders->entries) orders.push_back({{"n", e.n_x}, {"intensity", e.intensity}});
            r["orders"] = orders;
            r["asymmetry"] = row.asymmetry;
            r["d_im"] = row.metrics->d_im_antisym;
            r["d_re"] = row.metrics->d_re_sym;
            r["balance"] = row.metrics->gain_loss_balance;
            r["class"] = to_string(*row.kind);
        }
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace ptlattice
