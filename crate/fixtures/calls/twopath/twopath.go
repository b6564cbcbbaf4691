package twopath

func A() {
	B()
	C()
}

func B() { C() }

func C() {}
