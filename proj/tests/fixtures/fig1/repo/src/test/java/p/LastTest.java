package p;

import static org.junit.Assert.assertEquals;

import org.junit.Test;

public class LastTest {
  @Test void testLast() {
    char res = last("abc");
    assertEquals(res, 'c');
  }
}
