# Test package marker.

