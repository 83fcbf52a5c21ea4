#include "fiberlip/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fiberlip/util.hpp"

namespace fiberlip::io {

namespace {

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream msg;
        msg << origin << ":" << line << ":" << col << ": malformed JSON: " << e.what();
        throw SpecError(msg.str());
    }
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("cannot write " + path);
    out << doc.dump(2) << "\n";
}

LoadedSpec load_fibration_spec(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("space") || !doc.contains("fibers"))
        throw SpecError("fibration spec needs 'space' and 'fibers'");
    const auto& space = doc.at("space");
    const Backend backend = backend_from_name(space.value("backend", "matrix"));
    std::vector<std::vector<double>> points = space.value("points", std::vector<std::vector<double>>{});
    const int n = static_cast<int>(points.size());

    MetricSpace ms = [&]() {
        switch (backend) {
            case Backend::matrix:
            case Backend::graph_geodesic: {
                if (!space.contains("dist")) throw SpecError("matrix backend needs 'dist'");
                auto dist = space.at("dist").get<std::vector<std::vector<double>>>();
                return backend == Backend::matrix
                           ? MetricSpace::from_matrix(std::move(points), std::move(dist))
                           : MetricSpace::graph_geodesic(std::move(points), std::move(dist));
            }
            case Backend::euclidean:
                return MetricSpace::euclidean(std::move(points));
            case Backend::three_segment:
                return MetricSpace::three_segment(std::move(points));
            case Backend::koranyi:
                return MetricSpace::koranyi(std::move(points));
        }
        throw SpecError("unreachable backend");
    }();

    // fibers: point index (as JSON object key) -> base label
    const auto& fibers = doc.at("fibers");
    if (!fibers.is_object()) throw SpecError("'fibers' must map point indices to base labels");
    std::vector<std::string> label_of_point(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& [key, value] : fibers.items()) {
        int p = -1;
        try {
            p = std::stoi(key);
        } catch (...) {
            throw SpecError("fiber key is not a point index: " + key);
        }
        if (p < 0 || p >= n) throw SpecError("fiber key out of range: " + key);
        label_of_point[static_cast<std::size_t>(p)] = value.is_string() ? value.get<std::string>() : value.dump();
        seen[static_cast<std::size_t>(p)] = true;
    }
    for (int p = 0; p < n; ++p)
        if (!seen[static_cast<std::size_t>(p)])
            throw SpecError("fiber map is not total: point " + std::to_string(p) + " has no label");

    // label order: the explicit base_labels list when present (labels without
    // a preimage are rejected), else first appearance in point order
    std::vector<std::string> label_order;
    if (doc.contains("base_labels")) {
        for (const auto& l : doc.at("base_labels")) {
            const std::string label = l.is_string() ? l.get<std::string>() : l.dump();
            if (std::find(label_order.begin(), label_order.end(), label) == label_order.end())
                label_order.push_back(label);
        }
        for (int p = 0; p < n; ++p)
            if (std::find(label_order.begin(), label_order.end(), label_of_point[static_cast<std::size_t>(p)]) ==
                label_order.end())
                throw SpecError("fiber map references label '" + label_of_point[static_cast<std::size_t>(p)] +
                                "' missing from base_labels");
        for (const auto& label : label_order) {
            bool has_preimage = false;
            for (int p = 0; p < n; ++p)
                if (label_of_point[static_cast<std::size_t>(p)] == label) has_preimage = true;
            if (!has_preimage)
                throw SpecError("fiber map is not surjective: label '" + label + "' has no preimage");
        }
    } else {
        for (int p = 0; p < n; ++p) {
            const auto& label = label_of_point[static_cast<std::size_t>(p)];
            if (std::find(label_order.begin(), label_order.end(), label) == label_order.end())
                label_order.push_back(label);
        }
    }

    std::map<std::string, int> label_index;
    for (std::size_t i = 0; i < label_order.size(); ++i) label_index[label_order[i]] = static_cast<int>(i);
    std::vector<int> fiber_of;
    fiber_of.reserve(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) fiber_of.push_back(label_index.at(label_of_point[static_cast<std::size_t>(p)]));

    std::vector<std::vector<double>> label_coords;
    if (doc.contains("base_coords")) {
        label_coords.assign(label_order.size(), {});
        for (const auto& [label, coords] : doc.at("base_coords").items()) {
            const auto it = label_index.find(label);
            if (it == label_index.end()) throw SpecError("base_coords references unknown label " + label);
            label_coords[static_cast<std::size_t>(it->second)] = coords.get<std::vector<double>>();
        }
    }

    Fibration fib(std::move(ms), std::move(fiber_of), label_order, std::move(label_coords));

    if (doc.contains("affine")) {
        const auto& aff = doc.at("affine");
        const auto rows = aff.at("matrix").get<std::vector<std::vector<double>>>();
        if (rows.empty()) throw SpecError("affine matrix is empty");
        Eigen::MatrixXd a(static_cast<long>(rows.size()), static_cast<long>(rows.front().size()));
        for (long r = 0; r < a.rows(); ++r) {
            if (rows[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(a.cols()))
                throw SpecError("affine matrix is ragged");
            for (long c = 0; c < a.cols(); ++c) a(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        std::vector<Eigen::VectorXd> coords(label_order.size());
        for (const auto& [label, value] : aff.at("labels").items()) {
            const auto it = label_index.find(label);
            if (it == label_index.end()) throw SpecError("affine labels reference unknown label " + label);
            const auto v = value.get<std::vector<double>>();
            coords[static_cast<std::size_t>(it->second)] =
                Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
        }
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i].size() == 0)
                throw SpecError("affine labels missing coordinates for label " + label_order[i]);
        fib.attach_affine(AffineFiberModel{LinearQuotient(a), std::move(coords)});
    }

    LoadedSpec spec{std::move(fib), {}};
    if (doc.contains("sections")) {
        for (const auto& [name, mapping] : doc.at("sections").items()) {
            Section s;
            s.assign.assign(static_cast<std::size_t>(spec.fibration.num_labels()), -1);
            for (const auto& [label, idx] : mapping.items()) {
                const auto it = label_index.find(label);
                if (it == label_index.end())
                    throw SpecError("section '" + name + "' references unknown label " + label);
                s.assign[static_cast<std::size_t>(it->second)] = idx.get<int>();
            }
            for (std::size_t i = 0; i < s.assign.size(); ++i)
                if (s.assign[i] < 0)
                    throw SpecError("section '" + name + "' is missing label " + label_order[i]);
            spec.sections[name] = std::move(s);
        }
    }
    return spec;
}

LoadedSpec load_fibration_file(const std::string& path) {
    return load_fibration_spec(read_json_file(path));
}

nlohmann::json fibration_to_json(const Fibration& f, const std::map<std::string, Section>& sections) {
    nlohmann::json doc;
    doc["schema"] = kSchema;
    doc["space"]["backend"] = backend_name(f.total().backend());
    doc["space"]["points"] = f.total().points();
    if (f.total().has_matrix()) doc["space"]["dist"] = f.total().matrix();
    nlohmann::json fibers = nlohmann::json::object();
    for (int p = 0; p < f.num_points(); ++p) fibers[std::to_string(p)] = f.label_name(f.fiber_of(p));
    doc["fibers"] = std::move(fibers);
    doc["base_labels"] = f.label_names();
    if (f.has_label_coords()) {
        nlohmann::json coords = nlohmann::json::object();
        for (int l = 0; l < f.num_labels(); ++l) coords[f.label_name(l)] = f.label_coords(l);
        doc["base_coords"] = std::move(coords);
    }
    if (f.has_affine()) {
        const auto& aff = f.affine();
        std::vector<std::vector<double>> rows;
        for (long r = 0; r < aff.quotient.matrix().rows(); ++r) {
            std::vector<double> row;
            for (long c = 0; c < aff.quotient.matrix().cols(); ++c) row.push_back(aff.quotient.matrix()(r, c));
            rows.push_back(std::move(row));
        }
        doc["affine"]["matrix"] = rows;
        nlohmann::json labels = nlohmann::json::object();
        for (int l = 0; l < f.num_labels(); ++l) {
            const auto& v = aff.label_coords[static_cast<std::size_t>(l)];
            labels[f.label_name(l)] = std::vector<double>(v.data(), v.data() + v.size());
        }
        doc["affine"]["labels"] = std::move(labels);
    }
    if (!sections.empty()) {
        nlohmann::json secs = nlohmann::json::object();
        for (const auto& [name, s] : sections) {
            nlohmann::json mapping = nlohmann::json::object();
            for (int l = 0; l < f.num_labels() && l < s.size(); ++l) mapping[f.label_name(l)] = s(l);
            secs[name] = std::move(mapping);
        }
        doc["sections"] = std::move(secs);
    }
    return doc;
}

} // namespace fiberlip::io
