package cli

import "fmt"

// PrintTotal renders a user-facing summary; never consensus-critical.
func PrintTotal(total uint64) {
	fmt.Println(format(total))
}

func format(total uint64) string {
	return fmt.Sprintf("total=%d", total)
}
