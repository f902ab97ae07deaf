# D_1 / D_1 d : the module of polynomial functions
ring x xi cotangent;
dmodule M = d1;
check gabber;
