package cycle

func A(n int) {
	if n > 0 {
		B(n - 1)
	}
}

func B(n int) { A(n) }
