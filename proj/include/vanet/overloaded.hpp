#pragma once

namespace vanet {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace vanet
