ring x y;
ideal J = x^2, y^2;
bracket {x,y} = 1;
check gabber;
