package q;

import static org.junit.Assert.assertEquals;

import org.junit.Test;

public class WordCountTest {
  @Test
  public void testCountWords() {
    assertEquals(2, TextTools.countWords(" a  b "));
  }
}
