#include "sullivan/report.hpp"

#include <json.hpp>

#include <sstream>

namespace sullivan {

bool ReportNode::all_pass() const {
    if (status == "fail" || status == "error") return false;
    for (const ReportNode& c : children)
        if (!c.all_pass()) return false;
    return true;
}

ReportNode ReportNode::pass(std::string check, std::string witness, std::string paper_ref) {
    return ReportNode{std::move(check), "pass", std::move(witness), std::move(paper_ref), {}};
}

ReportNode ReportNode::fail(std::string check, std::string witness, std::string paper_ref) {
    return ReportNode{std::move(check), "fail", std::move(witness), std::move(paper_ref), {}};
}

ReportNode ReportNode::info(std::string check, std::string witness, std::string paper_ref) {
    return ReportNode{std::move(check), "info", std::move(witness), std::move(paper_ref), {}};
}

ReportNode& ReportNode::add(ReportNode child) {
    children.push_back(std::move(child));
    return *this;
}

namespace {

void render_text_rec(const ReportNode& n, int depth, std::ostringstream& os) {
    os << std::string(static_cast<size_t>(depth) * 2, ' ');
    os << "[" << n.status << "] " << n.check;
    if (!n.witness.empty()) os << ": " << n.witness;
    if (!n.paper_ref.empty()) os << "  (" << n.paper_ref << ")";
    os << "\n";
    for (const ReportNode& c : n.children) render_text_rec(c, depth + 1, os);
}

nlohmann::ordered_json to_json(const ReportNode& n) {
    nlohmann::ordered_json j;
    j["check"] = n.check;
    j["status"] = n.status;
    j["witness"] = n.witness;
    j["paper_ref"] = n.paper_ref;
    auto children = nlohmann::ordered_json::array();
    for (const ReportNode& c : n.children) children.push_back(to_json(c));
    j["children"] = std::move(children);
    return j;
}

}  // namespace

std::string render_text(const ReportNode& node) {
    std::ostringstream os;
    render_text_rec(node, 0, os);
    return os.str();
}

std::string render_json(const ReportNode& node) { return to_json(node).dump(2) + "\n"; }

}  // namespace sullivan
