#include "dynconn/graph_model.hpp"

namespace dynconn {

template class BasicGraphModel<HashNeighborSet>;
template class BasicGraphModel<RstSet>;

}  // namespace dynconn
