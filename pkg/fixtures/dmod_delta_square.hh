# D_1 / D_1 x^2 : supported on the origin, non-reduced symbol ideal
ring x xi cotangent;
dmodule M = x^2;
check gabber;
