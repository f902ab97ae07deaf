ring x1 x2 xi1 xi2 cotangent;
dmodule M = d1^2, x2^2;
check gabber;
