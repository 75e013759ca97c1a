#include "coarsegeo/space.hpp"

#include <algorithm>

namespace coarsegeo {

SubspaceView::SubspaceView(SpacePtr parent, PointPredicate member,
                           std::string name)
    : parent_(std::move(parent)), member_(std::move(member)),
      name_(std::move(name)) {
  if (!member_(*parent_, parent_->basepoint())) {
    throw DomainError("subspace '" + name_ +
                      "' does not contain the base point");
  }
}

std::vector<PointId> SubspaceView::ball(double radius) const {
  std::vector<PointId> out;
  for (PointId p : parent_->ball(radius)) {
    if (member_(*parent_, p)) out.push_back(p);
  }
  return out;
}

}  // namespace coarsegeo
