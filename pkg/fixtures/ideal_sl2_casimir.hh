# Kirillov-Kostant bracket on sl2*, Casimir hypersurface
ring x y z;
ideal J = x^2 + y^2 + z^2;
bracket {x,y} = z;
bracket {y,z} = x;
bracket {z,x} = y;
check gabber;
