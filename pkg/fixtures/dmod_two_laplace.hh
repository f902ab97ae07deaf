ring x1 x2 xi1 xi2 cotangent;
dmodule M = d1^2, d2^2 - x1;
check gabber;
