ring x xi cotangent;
dmodule M = d1^2;
check gabber;
